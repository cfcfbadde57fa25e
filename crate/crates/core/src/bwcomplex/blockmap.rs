use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{direct_product, IntMatrix, LatticeSolver, PresentedGroup};
use crate::fincat::MorphismId;
use crate::natsys::NaturalSystem;

use super::basis::BWBasis;

/// The degree-`n` cochain group `∏_σ D(σ1⋯σn)`, one block per basis sequence.
#[derive(Clone, Debug)]
pub struct CochainGroup {
    system: Arc<NaturalSystem>,
    composites: Vec<MorphismId>,
    offsets: Vec<usize>,
}

impl CochainGroup {
    pub fn new(system: Arc<NaturalSystem>, basis: &BWBasis, n: usize) -> Self {
        let composites: Vec<MorphismId> = (0..basis.len(n)).map(|i| basis.composite(n, i)).collect();
        let mut offsets = Vec::with_capacity(composites.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &u in &composites {
            acc += system.value(u).generators();
            offsets.push(acc);
        }
        CochainGroup {
            system,
            composites,
            offsets,
        }
    }

    /// Number of basis sequences.
    pub fn blocks(&self) -> usize {
        self.composites.len()
    }

    /// Total number of generators.
    pub fn generators(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn composite(&self, i: usize) -> MorphismId {
        self.composites[i]
    }

    /// `D(σ)` for the `i`-th sequence.
    pub fn block_group(&self, i: usize) -> &PresentedGroup {
        self.system.value(self.composites[i])
    }

    /// Whether no block carries relations.
    pub fn is_free(&self) -> bool {
        self.composites.iter().all(|&u| !self.system.value(u).has_relations())
    }

    pub fn presented(&self) -> PresentedGroup {
        let parts: Vec<PresentedGroup> = self.composites.iter().map(|&u| self.system.value(u).clone()).collect();
        direct_product(&parts)
    }

    pub(crate) fn zero_tester(&self) -> ZeroTester<'_> {
        ZeroTester {
            group: self,
            solvers: HashMap::new(),
        }
    }
}

/// Tests blocks for vanishing modulo the relations of their target block.
pub(crate) struct ZeroTester<'a> {
    group: &'a CochainGroup,
    solvers: HashMap<MorphismId, LatticeSolver>,
}

impl ZeroTester<'_> {
    pub fn is_zero(&mut self, row: usize, block: &IntMatrix) -> bool {
        if block.is_zero() {
            return true;
        }
        let u = self.group.composites[row];
        let g = self.group.system.value(u);
        if !g.has_relations() {
            return false;
        }
        self.solvers.entry(u).or_insert_with(|| g.zero_tester()).contains(block)
    }
}

/// A map between cochain groups, stored per target block as a sorted list of
/// `(source block, matrix)` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    source_blocks: usize,
    rows: Vec<Vec<(usize, IntMatrix)>>,
}

impl BlockMap {
    pub fn zero(target_blocks: usize, source_blocks: usize) -> Self {
        BlockMap {
            source_blocks,
            rows: vec![Vec::new(); target_blocks],
        }
    }

    pub(crate) fn from_rows(source_blocks: usize, rows: Vec<Vec<(usize, IntMatrix)>>) -> Self {
        BlockMap { source_blocks, rows }
    }

    pub fn target_blocks(&self) -> usize {
        self.rows.len()
    }

    pub fn source_blocks(&self) -> usize {
        self.source_blocks
    }

    pub fn row(&self, i: usize) -> &[(usize, IntMatrix)] {
        &self.rows[i]
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &BlockMap, inner: &BlockMap) -> BlockMap {
        assert_eq!(outer.source_blocks, inner.rows.len(), "block map shapes");
        let rows = outer
            .rows
            .iter()
            .map(|row| {
                let mut acc = RowBuilder::default();
                for (mid, a) in row {
                    for (src, b) in &inner.rows[*mid] {
                        acc.add(*src, a * b);
                    }
                }
                acc.finish()
            })
            .collect();
        BlockMap {
            source_blocks: inner.source_blocks,
            rows,
        }
    }

    /// `Σ coeff · map`.
    pub fn combination(terms: &[(i64, &BlockMap)]) -> BlockMap {
        let first = terms.first().expect("non-empty combination").1;
        let rows = (0..first.rows.len())
            .map(|i| {
                let mut acc = RowBuilder::default();
                for (k, m) in terms {
                    assert_eq!(m.rows.len(), first.rows.len());
                    assert_eq!(m.source_blocks, first.source_blocks);
                    let k = BigInt::from(*k);
                    for (j, b) in &m.rows[i] {
                        acc.add(*j, b.scaled(&k));
                    }
                }
                acc.finish()
            })
            .collect();
        BlockMap {
            source_blocks: first.source_blocks,
            rows,
        }
    }

    /// First `(target block, source block)` whose entry does not vanish in
    /// the target group.
    pub fn first_nonzero(&self, target: &CochainGroup) -> Option<(usize, usize)> {
        let mut tester = target.zero_tester();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                if !tester.is_zero(i, b) {
                    return Some((i, *j));
                }
            }
        }
        None
    }

    /// Dense matrix in the generator coordinates of the two groups.
    pub fn to_dense(&self, source: &CochainGroup, target: &CochainGroup) -> IntMatrix {
        let mut m = IntMatrix::zeros(target.generators(), source.generators());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                m.paste(target.offset(i), source.offset(*j), b);
            }
        }
        m
    }

    /// Rebuilds a block map from a dense matrix.
    pub fn from_dense(m: &IntMatrix, source: &CochainGroup, target: &CochainGroup) -> BlockMap {
        let rows = (0..target.blocks())
            .map(|i| {
                let r = target.offset(i)..target.offset(i + 1);
                (0..source.blocks())
                    .filter_map(|j| {
                        let b = m.submatrix(r.clone(), source.offset(j)..source.offset(j + 1));
                        (!b.is_zero()).then_some((j, b))
                    })
                    .collect()
            })
            .collect();
        BlockMap {
            source_blocks: source.blocks(),
            rows,
        }
    }
}

/// Accumulates `(source, block)` terms for one target row, merging repeats.
#[derive(Default)]
pub(crate) struct RowBuilder {
    terms: Vec<(usize, IntMatrix)>,
}

impl RowBuilder {
    pub fn add(&mut self, source: usize, block: IntMatrix) {
        self.terms.push((source, block));
    }

    pub fn add_signed(&mut self, source: usize, sign: i64, block: &IntMatrix) {
        if sign >= 0 {
            self.terms.push((source, block.clone()));
        } else {
            self.terms.push((source, -block));
        }
    }

    pub fn finish(mut self) -> Vec<(usize, IntMatrix)> {
        self.terms.sort_by_key(|(j, _)| *j);
        let mut out: Vec<(usize, IntMatrix)> = Vec::with_capacity(self.terms.len());
        for (j, b) in self.terms {
            match out.last_mut() {
                Some((k, acc)) if *k == j => acc.add_assign_checked(&b).expect("block shapes agree"),
                _ => out.push((j, b)),
            }
        }
        out.retain(|(_, b)| !b.entries().iter().all(Zero::is_zero));
        out
    }
}
