use super::{FinCatError, FiniteCategory, MorphismId, ObjectId};

/// A composable sequence `X_0 ←σ1− X_1 ←σ2− ⋯ ←σn− X_n`.
///
/// For `n = 0` the sequence is a single object, identified with its identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismSequence {
    object: ObjectId,
    morphisms: Vec<MorphismId>,
}

impl MorphismSequence {
    pub fn object(x: ObjectId) -> Self {
        MorphismSequence {
            object: x,
            morphisms: Vec::new(),
        }
    }

    /// Checks composability `target(σ_{i+1}) = source(σ_i)`.
    pub fn new(c: &FiniteCategory, morphisms: Vec<MorphismId>) -> Result<Self, FinCatError> {
        let Some(&first) = morphisms.first() else {
            return Err(FinCatError::Malformed(
                "use MorphismSequence::object for length 0".into(),
            ));
        };
        for w in morphisms.windows(2) {
            if c.target(w[1]) != c.source(w[0]) {
                return Err(FinCatError::NotComposable {
                    outer: w[0],
                    inner: w[1],
                });
            }
        }
        Ok(MorphismSequence {
            object: c.target(first),
            morphisms,
        })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphisms(&self) -> &[MorphismId] {
        &self.morphisms
    }

    /// `X_0`, the target of `σ1` (or the object for length 0).
    pub fn head(&self) -> ObjectId {
        self.object
    }

    /// `X_n`, the source of `σn`.
    pub fn tail(&self, c: &FiniteCategory) -> ObjectId {
        self.morphisms.last().map_or(self.object, |&f| c.source(f))
    }

    /// `X_0, …, X_n`.
    pub fn objects(&self, c: &FiniteCategory) -> Vec<ObjectId> {
        let mut out = vec![self.object];
        out.extend(self.morphisms.iter().map(|&f| c.source(f)));
        out
    }

    /// `σ1 ⋯ σn : X_n → X_0`; `1_X` for length 0.
    pub fn composite(&self, c: &FiniteCategory) -> MorphismId {
        if self.morphisms.is_empty() {
            c.identity(self.object)
        } else {
            c.compose_chain(&self.morphisms).expect("composable sequence")
        }
    }
}

/// All composable sequences of length `n`, lexicographic in morphism ids.
pub fn enumerate_sequences(c: &FiniteCategory, n: usize) -> Vec<MorphismSequence> {
    if n == 0 {
        return (0..c.object_count()).map(MorphismSequence::object).collect();
    }
    let incoming = c.incoming();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    fn go(
        c: &FiniteCategory,
        incoming: &[Vec<MorphismId>],
        n: usize,
        stack: &mut Vec<MorphismId>,
        out: &mut Vec<MorphismSequence>,
    ) {
        if stack.len() == n {
            out.push(MorphismSequence {
                object: c.target(stack[0]),
                morphisms: stack.clone(),
            });
            return;
        }
        let candidates: &[MorphismId] = match stack.last() {
            None => {
                for f in 0..c.morphism_count() {
                    stack.push(f);
                    go(c, incoming, n, stack, out);
                    stack.pop();
                }
                return;
            }
            Some(&prev) => &incoming[c.source(prev)],
        };
        for &f in candidates {
            stack.push(f);
            go(c, incoming, n, stack, out);
            stack.pop();
        }
    }
    go(c, &incoming, n, &mut stack, &mut out);
    out
}

/// Number of composable sequences of length `n`, without enumerating them.
pub fn count_sequences(c: &FiniteCategory, n: usize) -> u128 {
    if n == 0 {
        return c.object_count() as u128;
    }
    // ways[x]: chains of the current length whose last source is x
    let mut ways = vec![0u128; c.object_count()];
    for f in 0..c.morphism_count() {
        ways[c.source(f)] += 1;
    }
    for _ in 1..n {
        let mut next = vec![0u128; c.object_count()];
        for f in 0..c.morphism_count() {
            next[c.source(f)] = next[c.source(f)].saturating_add(ways[c.target(f)]);
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_counts() {
        let t = FiniteCategory::terminal();
        for n in 0..5 {
            assert_eq!(enumerate_sequences(&t, n).len(), 1);
        }
        let z2 = FiniteCategory::cyclic_group(2);
        for n in 0..6 {
            assert_eq!(enumerate_sequences(&z2, n).len(), 1 << n);
        }
        let a = FiniteCategory::arrow();
        // (1_x,1_x), (1_y,1_y), (1_y,f), (f,1_x)
        assert_eq!(enumerate_sequences(&a, 2).len(), 4);
        for n in 0..5 {
            assert_eq!(enumerate_sequences(&a, n).len() as u128, count_sequences(&a, n));
        }
    }

    #[test]
    fn sequences_are_sorted_and_composable() {
        let c = FiniteCategory::preorder(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let seqs = enumerate_sequences(&c, 3);
        assert!(seqs.windows(2).all(|w| w[0].morphisms() < w[1].morphisms()));
        for s in &seqs {
            let objs = s.objects(&c);
            let comp = s.composite(&c);
            assert_eq!(c.source(comp), objs[3]);
            assert_eq!(c.target(comp), objs[0]);
        }
    }

    #[test]
    fn length_zero_composite_is_identity() {
        let a = FiniteCategory::arrow();
        let s = MorphismSequence::object(1);
        assert_eq!(s.composite(&a), a.identity(1));
        assert_eq!(s.tail(&a), 1);
    }
}
