use num_traits::One;

use super::group::{preimage_of_relations, GroupHom, GroupInvariants, PresentedGroup};
use super::matrix::IntMatrix;
use super::normal_form::{column_span_basis, kernel_basis, smith_invariants, LatticeSolver};
use super::AbelianError;

/// `ker(d_out) / im(d_in)` for `A --d_in--> B --d_out--> C`, presented on a
/// basis of the cycle lattice.
///
/// `cycles` is a `g_B x l` matrix whose columns form a basis of the lattice
/// `{x in Z^g_B : d_out x ∈ im R_C}`; the quotient is `Z^l / colspan(relations)`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub cycles: IntMatrix,
    pub relations: IntMatrix,
    pub invariants: GroupInvariants,
    solver: LatticeSolver,
}

impl Subquotient {
    /// The subquotient as a presented group on the cycle basis.
    pub fn group(&self) -> PresentedGroup {
        PresentedGroup::new(self.cycles.cols(), self.relations.clone()).expect("shape is consistent")
    }

    /// Coordinates of cycles (columns of `v`) in the cycle basis.
    pub fn coordinates(&self, v: &IntMatrix) -> Option<IntMatrix> {
        if self.cycles.cols() == 0 {
            return v.is_zero().then(|| IntMatrix::zeros(0, v.cols()));
        }
        self.solver.solve(v)
    }
}

/// Matrix-level subquotient; see [`Subquotient`].
pub fn subquotient(
    m_in: &IntMatrix,
    rel_mid: &IntMatrix,
    m_out: &IntMatrix,
    rel_out: &IntMatrix,
) -> Result<Subquotient, AbelianError> {
    let b = m_out.cols();
    if m_in.rows() != b || rel_mid.rows() != b || rel_out.rows() != m_out.rows() {
        return Err(AbelianError::DimensionMismatch("subquotient chain shapes".into()));
    }
    let composite = m_out * m_in;
    if !composite.is_zero() && (rel_out.cols() == 0 || super::normal_form::solve(rel_out, &composite).is_none()) {
        return Err(AbelianError::CompositionNotZero);
    }
    let raw_cycles = if rel_out.cols() == 0 {
        kernel_basis(m_out)
    } else {
        preimage_of_relations(m_out, rel_out)
    };
    let cycles = column_span_basis(&raw_cycles);
    let solver = LatticeSolver::new(&cycles);
    let boundaries = m_in.hstack(rel_mid)?;
    let relations = if boundaries.cols() == 0 {
        IntMatrix::zeros(cycles.cols(), 0)
    } else if cycles.cols() == 0 {
        if !boundaries.is_zero() {
            return Err(AbelianError::NotWellDefined);
        }
        IntMatrix::zeros(0, boundaries.cols())
    } else {
        solver.solve(&boundaries).ok_or(AbelianError::NotWellDefined)?
    };
    let diag = smith_invariants(&relations);
    let invariants = GroupInvariants {
        free_rank: cycles.cols() - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    };
    Ok(Subquotient {
        cycles,
        relations,
        invariants,
        solver,
    })
}

/// Invariants of `ker(d_out) / im(d_in)`.
pub fn subquotient_invariants(d_in: &GroupHom, d_out: &GroupHom) -> Result<GroupInvariants, AbelianError> {
    if d_in.target() != d_out.source() {
        return Err(AbelianError::DimensionMismatch(
            "d_in target differs from d_out source".into(),
        ));
    }
    subquotient(
        d_in.matrix(),
        d_in.target().relations(),
        d_out.matrix(),
        d_out.target().relations(),
    )
    .map(|s| s.invariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn cokernel_of_doubling() {
        let z = PresentedGroup::free(1);
        let zero = PresentedGroup::trivial();
        let d_in = GroupHom::scalar(&z, 2);
        let d_out = GroupHom::zero(&z, &zero);
        let inv = subquotient_invariants(&d_in, &d_out).unwrap();
        assert_eq!(inv.torsion, vec![BigInt::from(2)]);
        assert_eq!(inv.free_rank, 0);
    }

    #[test]
    fn identity_is_exact() {
        let z = PresentedGroup::free(1);
        let d_in = GroupHom::identity(&z);
        let d_out = GroupHom::zero(&z, &PresentedGroup::trivial());
        assert!(subquotient_invariants(&d_in, &d_out).unwrap().is_trivial());
    }

    #[test]
    fn zero_differentials() {
        let z = PresentedGroup::free(1);
        let d_in = GroupHom::zero(&PresentedGroup::trivial(), &z);
        let d_out = GroupHom::zero(&z, &PresentedGroup::trivial());
        assert_eq!(subquotient_invariants(&d_in, &d_out).unwrap(), GroupInvariants::free(1));
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let z = PresentedGroup::free(1);
        let id = GroupHom::identity(&z);
        assert!(matches!(
            subquotient_invariants(&id, &id),
            Err(AbelianError::CompositionNotZero)
        ));
        // Z --x2--> Z/4 --x2--> Z/4 composes to zero mod 4.
        let z4 = PresentedGroup::cyclic(4);
        let d_in = GroupHom::new(z.clone(), z4.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let d_out = GroupHom::scalar(&z4, 2);
        let inv = subquotient_invariants(&d_in, &d_out).unwrap();
        assert!(inv.is_trivial());
    }

    #[test]
    fn torsion_kernel() {
        // Z/4 --x2--> Z/4: kernel {0, 2} ≅ Z/2.
        let z4 = PresentedGroup::cyclic(4);
        let d_in = GroupHom::zero(&PresentedGroup::trivial(), &z4);
        let inv = subquotient_invariants(&d_in, &GroupHom::scalar(&z4, 2)).unwrap();
        assert_eq!(inv.torsion, vec![BigInt::from(2)]);
    }
}
