use std::cmp::Ordering;
use std::sync::Arc;

use crate::fincat::{enumerate_sequences, FiniteCategory, MorphismId, MorphismSequence, ObjectId};

/// Canonically ordered composable sequences of each length `0..=max_len`,
/// with their composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BWBasis {
    category: Arc<FiniteCategory>,
    levels: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    // sequences of this length, concatenated
    flat: Vec<MorphismId>,
    composites: Vec<MorphismId>,
    heads: Vec<ObjectId>,
}

impl BWBasis {
    pub fn new(category: Arc<FiniteCategory>, max_len: usize) -> Self {
        let c = &*category;
        let mut levels = Vec::with_capacity(max_len + 1);
        for n in 0..=max_len {
            let seqs = enumerate_sequences(c, n);
            let mut flat = Vec::with_capacity(seqs.len() * n);
            let mut composites = Vec::with_capacity(seqs.len());
            let mut heads = Vec::with_capacity(seqs.len());
            for s in &seqs {
                flat.extend_from_slice(s.morphisms());
                composites.push(s.composite(c));
                heads.push(s.head());
            }
            levels.push(Level {
                flat,
                composites,
                heads,
            });
        }
        BWBasis { category, levels }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of sequences of length `n`.
    pub fn len(&self, n: usize) -> usize {
        self.levels[n].composites.len()
    }

    pub fn is_empty(&self, n: usize) -> bool {
        self.len(n) == 0
    }

    /// Morphisms `σ1, …, σn` of the `i`-th sequence of length `n`.
    #[inline]
    pub fn morphisms(&self, n: usize, i: usize) -> &[MorphismId] {
        &self.levels[n].flat[i * n..(i + 1) * n]
    }

    /// `σ1 ⋯ σn` (`1_X` for length 0).
    #[inline]
    pub fn composite(&self, n: usize, i: usize) -> MorphismId {
        self.levels[n].composites[i]
    }

    /// `X_0`.
    #[inline]
    pub fn head(&self, n: usize, i: usize) -> ObjectId {
        self.levels[n].heads[i]
    }

    /// `X_0, …, X_n`.
    pub fn objects(&self, n: usize, i: usize) -> Vec<ObjectId> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.head(n, i));
        out.extend(self.morphisms(n, i).iter().map(|&f| self.category.source(f)));
        out
    }

    pub fn sequence(&self, n: usize, i: usize) -> MorphismSequence {
        if n == 0 {
            MorphismSequence::object(i)
        } else {
            MorphismSequence::new(&self.category, self.morphisms(n, i).to_vec()).expect("basis sequences compose")
        }
    }

    /// Index of a sequence; `object` is used only when `morphisms` is empty.
    pub fn index(&self, morphisms: &[MorphismId], object: ObjectId) -> usize {
        let n = morphisms.len();
        if n == 0 {
            return object;
        }
        let level = &self.levels[n];
        let (mut lo, mut hi) = (0, level.composites.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match level.flat[mid * n..(mid + 1) * n].cmp(morphisms) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return mid,
            }
        }
        panic!("sequence {morphisms:?} is not composable")
    }
}
