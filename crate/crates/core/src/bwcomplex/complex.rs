use std::sync::Arc;

use crate::abelian::{
    rank, smith_invariants, subquotient, GroupHom, GroupInvariants, IntMatrix, PresentedGroup, Subquotient,
};
use crate::natsys::NaturalSystem;

use super::basis::BWBasis;
use super::blockmap::{BlockMap, CochainGroup, RowBuilder};
use super::BWError;

/// `F*(C, D)` truncated at degree `N`: groups `F^0 … F^N` and differentials
/// `d^0 … d^{N-1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    system: Arc<NaturalSystem>,
    basis: Arc<BWBasis>,
    groups: Vec<CochainGroup>,
    differentials: Vec<BlockMap>,
}

impl CochainComplex {
    /// Builds the complex and checks `d ∘ d = 0` in every computed degree.
    pub fn build(system: Arc<NaturalSystem>, max_degree: usize) -> Result<Self, BWError> {
        let complex = Self::build_unchecked(system, max_degree)?;
        complex.check_nilpotent()?;
        Ok(complex)
    }

    pub fn build_unchecked(system: Arc<NaturalSystem>, max_degree: usize) -> Result<Self, BWError> {
        if max_degree == 0 {
            return Err(BWError::DegreeOutOfRange { degree: 0, max: 0 });
        }
        let basis = Arc::new(BWBasis::new(system.base().clone(), max_degree));
        let groups: Vec<CochainGroup> = (0..=max_degree)
            .map(|n| CochainGroup::new(system.clone(), &basis, n))
            .collect();
        let differentials = (0..max_degree).map(|n| differential(&system, &basis, n)).collect();
        Ok(CochainComplex {
            system,
            basis,
            groups,
            differentials,
        })
    }

    pub fn system(&self) -> &Arc<NaturalSystem> {
        &self.system
    }

    pub fn basis(&self) -> &Arc<BWBasis> {
        &self.basis
    }

    /// `N`.
    pub fn max_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, n: usize) -> &CochainGroup {
        &self.groups[n]
    }

    /// `d^n: F^n → F^{n+1}`.
    pub fn differential(&self, n: usize) -> &BlockMap {
        &self.differentials[n]
    }

    /// `d^n` as a homomorphism of presented groups.
    pub fn differential_hom(&self, n: usize) -> Result<GroupHom, BWError> {
        let m = self.differentials[n].to_dense(&self.groups[n], &self.groups[n + 1]);
        Ok(GroupHom::new(
            self.groups[n].presented(),
            self.groups[n + 1].presented(),
            m,
        )?)
    }

    fn check_nilpotent(&self) -> Result<(), BWError> {
        for n in 0..self.differentials.len().saturating_sub(1) {
            let dd = BlockMap::compose(&self.differentials[n + 1], &self.differentials[n]);
            if let Some((target, source)) = dd.first_nonzero(&self.groups[n + 2]) {
                return Err(BWError::DifferentialNotNilpotent {
                    degree: n,
                    row: target,
                    column: source,
                });
            }
        }
        Ok(())
    }

    fn check_degree(&self, n: usize) -> Result<(), BWError> {
        if n >= self.max_degree() {
            return Err(BWError::DegreeOutOfRange {
                degree: n,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    fn incoming_dense(&self, n: usize) -> IntMatrix {
        if n == 0 {
            IntMatrix::zeros(self.groups[0].generators(), 0)
        } else {
            self.differentials[n - 1].to_dense(&self.groups[n - 1], &self.groups[n])
        }
    }

    /// `H^n` for `0 ≤ n < N`.
    pub fn cohomology(&self, n: usize) -> Result<GroupInvariants, BWError> {
        self.check_degree(n)?;
        let d_out = self.differentials[n].to_dense(&self.groups[n], &self.groups[n + 1]);
        let d_in = self.incoming_dense(n);
        let free = self.groups[n].is_free() && self.groups[n + 1].is_free();
        if free {
            // ker d^n is saturated in Z^g, so the torsion of ker/im is the
            // torsion of Z^g / im d^{n-1}.
            let inv_in = smith_invariants(&d_in);
            let free_rank = self.groups[n].generators() - rank(&d_out) - inv_in.len();
            return Ok(GroupInvariants::from_cyclic_orders(
                inv_in.into_iter().chain(std::iter::repeat_n(0.into(), free_rank)),
            ));
        }
        Ok(self.cohomology_subquotient(n)?.invariants)
    }

    /// `H^n` with its cycle basis, for transporting classes.
    pub fn cohomology_subquotient(&self, n: usize) -> Result<Subquotient, BWError> {
        self.check_degree(n)?;
        let d_out = self.differentials[n].to_dense(&self.groups[n], &self.groups[n + 1]);
        let d_in = self.incoming_dense(n);
        let rel_mid = self.groups[n].presented().relations().clone();
        let rel_out = self.groups[n + 1].presented().relations().clone();
        Ok(subquotient(&d_in, &rel_mid, &d_out, &rel_out)?)
    }

    /// `H^0 … H^{N-1}`.
    pub fn cohomology_all(&self) -> Result<Vec<GroupInvariants>, BWError> {
        (0..self.max_degree()).map(|n| self.cohomology(n)).collect()
    }

    /// Group `F^n` as a presentation.
    pub fn presented(&self, n: usize) -> PresentedGroup {
        self.groups[n].presented()
    }
}

/// `d^n: F^n → F^{n+1}`:
/// `d(c)(σ1…σ_{n+1}) = D(1, σ1) c(σ2…) + Σ_{i=1}^{n} (−1)^i c(…, σ_i σ_{i+1}, …)
///  + (−1)^{n+1} D(σ_{n+1}, 1) c(σ1…σn)`.
fn differential(system: &NaturalSystem, basis: &BWBasis, n: usize) -> BlockMap {
    let c = &**basis.category();
    let fc = system.factorization();
    let rows = (0..basis.len(n + 1))
        .map(|i| {
            let s = basis.morphisms(n + 1, i);
            let mut row = RowBuilder::default();

            let tail = &s[1..];
            let j = basis.index(tail, c.source(s[0]));
            let u = basis.composite(n, j);
            let p = fc.right(u, s[0]).expect("(1, σ1) exists");
            row.add(j, system.action(p).matrix().clone());

            let mut merged = Vec::with_capacity(n);
            for k in 1..=n {
                merged.clear();
                merged.extend_from_slice(&s[..k - 1]);
                merged.push(c.composite(s[k - 1], s[k]).expect("composable"));
                merged.extend_from_slice(&s[k + 1..]);
                let j = basis.index(&merged, 0);
                let g = system.value(basis.composite(n, j)).generators();
                row.add_signed(j, sign(k), &IntMatrix::identity(g));
            }

            let head = &s[..n];
            let j = basis.index(head, c.target(s[0]));
            let u = basis.composite(n, j);
            let p = fc.left(u, s[n]).expect("(σ_{n+1}, 1) exists");
            row.add_signed(j, sign(n + 1), system.action(p).matrix());
            row.finish()
        })
        .collect();
    BlockMap::from_rows(basis.len(n), rows)
}

#[inline]
pub(crate) fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
