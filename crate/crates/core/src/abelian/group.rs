use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{kernel_basis, rank, smith_invariants, solve, LatticeSolver};
use super::subquotient::subquotient;
use super::AbelianError;

/// A finitely presented abelian group `Z^g / colspan(R)`.
///
/// Relations are stored column-wise: each column of `R` is one relation among
/// the `g` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.rows() != generators {
            return Err(AbelianError::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(PresentedGroup { generators, relations })
    }

    pub fn free(rank: usize) -> Self {
        PresentedGroup {
            generators: rank,
            relations: IntMatrix::zeros(rank, 0),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`; `n = 0` gives `Z`, `n = 1` a one-generator presentation of 0.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        PresentedGroup {
            generators: 1,
            relations: IntMatrix::from_rows(&[[n as i64]]),
        }
    }

    /// `Z^rank ⊕ Z/d1 ⊕ ...` in the obvious presentation.
    pub fn from_invariants(inv: &GroupInvariants) -> Self {
        let mut parts: Vec<PresentedGroup> = inv
            .torsion
            .iter()
            .map(|d| PresentedGroup {
                generators: 1,
                relations: IntMatrix::from_entries(1, 1, vec![d.clone()]).unwrap(),
            })
            .collect();
        parts.push(Self::free(inv.free_rank));
        direct_product(&parts)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn has_relations(&self) -> bool {
        self.relations.cols() > 0
    }

    pub fn invariants(&self) -> GroupInvariants {
        group_invariants(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_trivial()
    }

    /// Whether the column vectors of `m` all represent zero in the group.
    pub fn represents_zero(&self, m: &IntMatrix) -> bool {
        if m.is_zero() {
            return true;
        }
        if !self.has_relations() {
            return false;
        }
        solve(&self.relations, m).is_some()
    }

    /// Membership helper that can be reused for many queries.
    pub fn zero_tester(&self) -> LatticeSolver {
        LatticeSolver::new(&self.relations)
    }
}

impl fmt::Debug for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} gens | {:?}>", self.generators, self.relations)
    }
}

/// Block sum of presentations.
pub fn direct_product(groups: &[PresentedGroup]) -> PresentedGroup {
    let blocks: Vec<&IntMatrix> = groups.iter().map(|g| &g.relations).collect();
    let relations = IntMatrix::block_diagonal(&blocks);
    PresentedGroup {
        generators: relations.rows(),
        relations,
    }
}

/// Canonical isomorphism type: free rank plus invariant factors `d1 | d2 | ...`,
/// each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupInvariants {
    pub fn trivial() -> Self {
        GroupInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        GroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into
    /// invariant-factor form.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(|o| o.abs()).filter(|o| !o.is_one()).collect();
        let free_rank = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<BigInt> = orders.into_iter().filter(|o| !o.is_zero()).collect();
        let diag = IntMatrix::from_entries(finite.len(), finite.len(), {
            let n = finite.len();
            let mut e = vec![BigInt::zero(); n * n];
            for (i, o) in finite.iter().enumerate() {
                e[i * n + i] = o.clone();
            }
            e
        })
        .unwrap();
        let torsion = smith_invariants(&diag).into_iter().filter(|d| !d.is_one()).collect();
        GroupInvariants { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of elements if the group is finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Machine-readable form: `rank;t1,t2,...`.
    pub fn machine(&self) -> String {
        let t: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        format!("{};{}", self.free_rank, t.join(","))
    }

    /// Human-readable form such as `Z^2 ⊕ Z/2`; the trivial group prints `0`.
    pub fn human(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }

    /// Parses the `rank;t1,t2` form produced by [`GroupInvariants::machine`].
    pub fn parse_machine(s: &str) -> Option<Self> {
        let (rank, tors) = s.split_once(';')?;
        let free_rank = rank.trim().parse().ok()?;
        let torsion = if tors.trim().is_empty() {
            Vec::new()
        } else {
            tors.split(',')
                .map(|t| t.trim().parse::<BigInt>().ok())
                .collect::<Option<Vec<_>>>()?
        };
        Some(GroupInvariants { free_rank, torsion })
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.human())
    }
}

/// Invariants of `Z^g / im R`, read off the Smith diagonal.
pub fn group_invariants(g: &PresentedGroup) -> GroupInvariants {
    let diag = smith_invariants(&g.relations);
    let free_rank = g.generators - diag.len();
    GroupInvariants {
        free_rank,
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// A homomorphism of presented groups, given on generators.
///
/// `matrix` is `g_target x g_source`; `witness` certifies well-definedness via
/// `matrix * R_source = R_target * witness`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: PresentedGroup,
    target: PresentedGroup,
    matrix: IntMatrix,
    witness: IntMatrix,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?} -> {:?}: {:?})", self.source, self.target, self.matrix)
    }
}

impl GroupHom {
    pub fn new(source: PresentedGroup, target: PresentedGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(AbelianError::DimensionMismatch(format!(
                "{}x{} matrix for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.generators,
                target.generators
            )));
        }
        let image = &matrix * &source.relations;
        let witness = if image.is_zero() {
            IntMatrix::zeros(target.relations.cols(), source.relations.cols())
        } else {
            solve(&target.relations, &image).ok_or(AbelianError::NotWellDefined)?
        };
        Ok(GroupHom {
            source,
            target,
            matrix,
            witness,
        })
    }

    pub fn identity(g: &PresentedGroup) -> Self {
        let r = g.relations.cols();
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.generators),
            witness: IntMatrix::identity(r),
        }
    }

    pub fn zero(source: &PresentedGroup, target: &PresentedGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generators, source.generators),
            witness: IntMatrix::zeros(target.relations.cols(), source.relations.cols()),
        }
    }

    /// Multiplication by an integer on `g`.
    pub fn scalar(g: &PresentedGroup, k: i64) -> Self {
        let r = g.relations.cols();
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::scalar(g.generators, k),
            witness: IntMatrix::scalar(r, k),
        }
    }

    pub fn source(&self) -> &PresentedGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn witness(&self) -> &IntMatrix {
        &self.witness
    }

    /// Rechecks `M R_source = R_target Q`.
    pub fn witness_holds(&self) -> bool {
        &self.matrix * &self.source.relations == &self.target.relations * &self.witness
    }

    /// Whether `self` and `other` agree as maps of the quotient groups.
    pub fn equals(&self, other: &GroupHom) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let diff = &self.matrix - &other.matrix;
        self.target.represents_zero(&diff)
    }

    /// Whether this is the zero map on the quotients.
    pub fn is_zero(&self) -> bool {
        self.target.represents_zero(&self.matrix)
    }

    /// Whether this acts as the identity on the quotient (source = target).
    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.equals(&GroupHom::identity(&self.source))
    }

    /// `kernel / trivial` and `cokernel` both vanish.
    pub fn is_iso(&self) -> bool {
        is_iso(self)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom, AbelianError> {
        if !self.is_iso() {
            return Err(AbelianError::NotInvertible);
        }
        // Solve M x + R_target y = e_j for every target generator.
        let system = self.matrix.hstack(&self.target.relations)?;
        let rhs = IntMatrix::identity(self.target.generators);
        let sol = solve(&system, &rhs).ok_or(AbelianError::NotInvertible)?;
        let inv = sol.submatrix(0..self.source.generators, 0..self.target.generators);
        GroupHom::new(self.target.clone(), self.source.clone(), inv)
    }
}

/// `outer ∘ inner`.
pub fn hom_compose(outer: &GroupHom, inner: &GroupHom) -> Result<GroupHom, AbelianError> {
    if inner.target != outer.source {
        return Err(AbelianError::DimensionMismatch(
            "composition: inner target differs from outer source".into(),
        ));
    }
    // (M2 M1) R_A = M2 R_B Q1 = R_C Q2 Q1
    Ok(GroupHom {
        source: inner.source.clone(),
        target: outer.target.clone(),
        matrix: &outer.matrix * &inner.matrix,
        witness: &outer.witness * &inner.witness,
    })
}

pub fn hom_add(a: &GroupHom, b: &GroupHom) -> Result<GroupHom, AbelianError> {
    if a.source != b.source || a.target != b.target {
        return Err(AbelianError::DimensionMismatch(
            "sum of maps with different ends".into(),
        ));
    }
    Ok(GroupHom {
        source: a.source.clone(),
        target: a.target.clone(),
        matrix: &a.matrix + &b.matrix,
        witness: &a.witness + &b.witness,
    })
}

pub fn hom_negate(a: &GroupHom) -> GroupHom {
    GroupHom {
        source: a.source.clone(),
        target: a.target.clone(),
        matrix: -&a.matrix,
        witness: -&a.witness,
    }
}

/// Kernel of `h` as a group (elements of the source mapping to zero, modulo
/// the source relations).
pub fn kernel_invariants(h: &GroupHom) -> GroupInvariants {
    let zero_in = IntMatrix::zeros(h.source.generators, 0);
    subquotient(&zero_in, &h.source.relations, &h.matrix, &h.target.relations)
        .expect("a zero incoming map always composes to zero")
        .invariants
}

/// Bijectivity on the quotient groups.
pub fn is_iso(h: &GroupHom) -> bool {
    // Surjective iff [M | R_target] spans Z^g_target.
    let span = h.matrix.hstack(&h.target.relations).expect("row counts agree");
    let g = h.target.generators;
    let surjective = if g == 0 {
        true
    } else {
        rank(&span) == g && smith_invariants(&span).iter().all(|d| d.is_one())
    };
    surjective && kernel_invariants(h).is_trivial()
}

/// Brute-force helper for small finite groups: element count, if finite and
/// below `limit`.
pub fn finite_order(g: &PresentedGroup, limit: u64) -> Option<u64> {
    let inv = group_invariants(g);
    let order = inv.order()?;
    order.to_u64().filter(|&o| o <= limit)
}

/// Columns spanning the subgroup of `Z^g` that maps into `im R_target`.
pub(crate) fn preimage_of_relations(m: &IntMatrix, target_relations: &IntMatrix) -> IntMatrix {
    let stacked = m.hstack(target_relations).expect("row counts agree");
    let k = kernel_basis(&stacked);
    k.submatrix(0..m.cols(), 0..k.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn invariants_examples() {
        let z2 = PresentedGroup::cyclic(2);
        assert_eq!(
            group_invariants(&z2),
            GroupInvariants {
                free_rank: 0,
                torsion: vec![big(2)]
            }
        );
        assert_eq!(group_invariants(&PresentedGroup::free(2)), GroupInvariants::free(2));
        let g = PresentedGroup::new(2, IntMatrix::from_rows(&[[2, 0], [0, 0]])).unwrap();
        assert_eq!(
            group_invariants(&g),
            GroupInvariants {
                free_rank: 1,
                torsion: vec![big(2)]
            }
        );
    }

    #[test]
    fn iso_examples() {
        let z4 = PresentedGroup::cyclic(4);
        assert!(is_iso(&GroupHom::identity(&z4)));
        let z = PresentedGroup::free(1);
        assert!(!is_iso(&GroupHom::scalar(&z, 2)));
        assert!(is_iso(&GroupHom::scalar(&z, -1)));
        assert!(is_iso(&GroupHom::scalar(&PresentedGroup::cyclic(5), 2)));
        assert!(!is_iso(&GroupHom::scalar(&z4, 2)));
    }

    #[test]
    fn product_invariants() {
        let p = direct_product(&[PresentedGroup::cyclic(2), PresentedGroup::free(1)]);
        assert_eq!(
            group_invariants(&p),
            GroupInvariants {
                free_rank: 1,
                torsion: vec![big(2)]
            }
        );
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        // Z/2 -> Z/3 sending the generator to 1 is not well defined.
        let err = GroupHom::new(
            PresentedGroup::cyclic(2),
            PresentedGroup::cyclic(3),
            IntMatrix::from_rows(&[[1]]),
        );
        assert!(matches!(err, Err(AbelianError::NotWellDefined)));
        // Z/4 -> Z/2 reduction is fine.
        assert!(GroupHom::new(
            PresentedGroup::cyclic(4),
            PresentedGroup::cyclic(2),
            IntMatrix::from_rows(&[[1]])
        )
        .is_ok());
    }

    #[test]
    fn inverse_of_unit() {
        let z5 = PresentedGroup::cyclic(5);
        let two = GroupHom::scalar(&z5, 2);
        let inv = two.inverse().unwrap();
        assert!(hom_compose(&inv, &two).unwrap().is_identity());
        assert!(GroupHom::scalar(&PresentedGroup::free(1), 3).inverse().is_err());
    }

    #[test]
    fn cyclic_order_normalization() {
        let inv = GroupInvariants::from_cyclic_orders([big(2), big(3), big(0), big(1), big(4)]);
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, vec![big(2), big(12)]);
        assert_eq!(inv.human(), "Z ⊕ Z/2 ⊕ Z/12");
        assert_eq!(GroupInvariants::parse_machine(&inv.machine()), Some(inv));
    }
}
