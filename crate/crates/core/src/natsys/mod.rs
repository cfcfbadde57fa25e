//! Natural systems `D: FC → Ab` and their morphisms.
//!
//! A natural system stores its full action table over every morphism of the
//! realized factorization category; generator-based input is completed by
//! composition `D(h, k) = D(1, k) D(h, 1)` and revalidated.

mod abfunctor;
mod morphism;

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::{AbelianError, GroupHom, IntMatrix, PresentedGroup};
use crate::factorization::{factor_nat, FactorizationCategory};
use crate::fincat::{FinCatError, FiniteCategory, Functor, MorphismId, NaturalTransformation, Report};

pub use abfunctor::{AbFunctor, AbFunctorViolation};
pub use morphism::{act_by_two_morphism, NatFTwoMorphism, NatSysMorphism, NaturalityFailure};

#[derive(Debug, thiserror::Error)]
pub enum NatSysError {
    #[error("natural system is not functorial:\n{0}")]
    Invalid(Report<AbFunctorViolation>),
    #[error("bifunctor is not functorial:\n{0}")]
    BifunctorInvalid(Report<AbFunctorViolation>),
    #[error("missing generator action {0}")]
    MissingGenerator(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism of natural systems is not natural at {0}")]
    NotNatural(NaturalityFailure),
    #[error("2-morphism condition t = s(1_D * F(ε, γ)) fails at {0}")]
    TwoMorphismInvalid(MorphismId),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    FinCat(#[from] FinCatError),
}

/// A natural system on `C`: a functor `FC → Ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSystem {
    fc: Arc<FactorizationCategory>,
    functor: AbFunctor,
}

impl NaturalSystem {
    /// Wraps and validates a functor on `FC`.
    pub fn new(fc: Arc<FactorizationCategory>, functor: AbFunctor) -> Result<Self, NatSysError> {
        if **functor.category() != **fc.category() {
            return Err(NatSysError::ShapeMismatch("functor is not defined on FC".into()));
        }
        let functor = functor.rebased(fc.category().clone());
        let report = functor.validate();
        if !report.is_ok() {
            return Err(NatSysError::Invalid(report));
        }
        Ok(NaturalSystem { fc, functor })
    }

    /// Completes generator actions `D(h, 1): D(f) → D(fh)` (keyed `(f, h)`)
    /// and `D(1, k): D(f) → D(kf)` (keyed `(f, k)`). Missing generators with an
    /// identity morphism default to the identity matrix.
    pub fn from_generators(
        fc: Arc<FactorizationCategory>,
        values: Vec<PresentedGroup>,
        left: &HashMap<(MorphismId, MorphismId), IntMatrix>,
        right: &HashMap<(MorphismId, MorphismId), IntMatrix>,
    ) -> Result<Self, NatSysError> {
        let c = fc.base().clone();
        if values.len() != c.morphism_count() {
            return Err(NatSysError::ShapeMismatch("one value per morphism expected".into()));
        }
        let generator = |table: &HashMap<(MorphismId, MorphismId), IntMatrix>,
                         f: MorphismId,
                         u: MorphismId,
                         side: &str| {
            match table.get(&(f, u)) {
                Some(m) => Ok(m.clone()),
                None if c.is_identity(u) => Ok(IntMatrix::identity(values[f].generators())),
                None => Err(NatSysError::MissingGenerator(format!(
                    "{side} {} on {}",
                    c.morphism_name(u),
                    c.morphism_name(f)
                ))),
            }
        };
        let mut actions = Vec::with_capacity(fc.pairs().len());
        for p in fc.pairs() {
            let fh = c.compose(p.source, p.h)?;
            let l = generator(left, p.source, p.h, "left")?;
            let r = generator(right, fh, p.k, "right")?;
            let m = r.checked_mul(&l)?;
            actions.push(GroupHom::new(values[p.source].clone(), values[p.target].clone(), m)?);
        }
        let functor = AbFunctor::from_tables(fc.category().clone(), values, actions)?;
        Self::new(fc, functor)
    }

    /// Every value `g`, every action the identity.
    pub fn constant(fc: Arc<FactorizationCategory>, g: &PresentedGroup) -> Self {
        let functor = AbFunctor::constant(fc.category().clone(), g);
        NaturalSystem { fc, functor }
    }

    /// The system `f: X → Y ↦ B(X, Y)` induced by a functor
    /// `B: C^op × C → Ab` along `FC → C^op × C`.
    pub fn from_bifunctor(fc: Arc<FactorizationCategory>, b: &AbFunctor) -> Result<Self, NatSysError> {
        let c = fc.base();
        let expected = c.opposite().product(c);
        if **b.category() != expected {
            return Err(NatSysError::ShapeMismatch(
                "bifunctor is not defined on C^op × C".into(),
            ));
        }
        let report = b.validate();
        if !report.is_ok() {
            return Err(NatSysError::BifunctorInvalid(report));
        }
        let proj = crate::factorization::projection_to_pair(&fc, b.category().clone());
        let functor = b.pullback(&proj)?.rebased(fc.category().clone());
        Ok(NaturalSystem { fc, functor })
    }

    pub fn factorization(&self) -> &Arc<FactorizationCategory> {
        &self.fc
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        self.fc.base()
    }

    pub fn functor(&self) -> &AbFunctor {
        &self.functor
    }

    /// `D(f)`.
    #[inline]
    pub fn value(&self, f: MorphismId) -> &PresentedGroup {
        self.functor.value(f)
    }

    /// `D(p)` for a pair id `p` of `FC`.
    #[inline]
    pub fn action(&self, p: MorphismId) -> &GroupHom {
        self.functor.action(p)
    }

    /// `D(h, k)` out of `D(f)`.
    pub fn action_of(&self, f: MorphismId, h: MorphismId, k: MorphismId) -> Option<&GroupHom> {
        self.fc.pair_id(f, h, k).map(|p| self.action(p))
    }

    pub fn validate(&self) -> Report<AbFunctorViolation> {
        self.functor.validate()
    }

    /// `D ∘ G` for a functor `G: FB → FC` between factorization categories.
    pub fn pullback(&self, fb: Arc<FactorizationCategory>, g: &Functor) -> Result<NaturalSystem, NatSysError> {
        let functor = self.functor.pullback(g)?.rebased(fb.category().clone());
        Ok(NaturalSystem { fc: fb, functor })
    }

    /// `D ∘ F(α)` for `α: φ ⇒ ψ: 𝒟 → C`, a natural system on `𝒟`.
    pub fn pullback_along_nat(
        &self,
        fd: Arc<FactorizationCategory>,
        alpha: &NaturalTransformation,
    ) -> Result<NaturalSystem, NatSysError> {
        let fa = factor_nat(alpha, &fd, &self.fc)?;
        self.pullback(fd, &fa)
    }

    pub fn direct_sum(parts: &[&NaturalSystem]) -> Result<NaturalSystem, NatSysError> {
        let Some(first) = parts.first() else {
            return Err(NatSysError::ShapeMismatch("empty direct sum".into()));
        };
        let functors: Vec<&AbFunctor> = parts.iter().map(|p| &p.functor).collect();
        let functor = AbFunctor::direct_sum(&functors)?;
        Ok(NaturalSystem {
            fc: first.fc.clone(),
            functor,
        })
    }

    /// The system on `C^op` with `D^op(f) = D(f)` and `D^op(k, h) = D(h, k)`.
    /// `fc_op` must be the factorization category of `C^op`.
    pub fn mirror(&self, fc_op: Arc<FactorizationCategory>) -> Result<NaturalSystem, NatSysError> {
        if **fc_op.base() != self.base().opposite() {
            return Err(NatSysError::ShapeMismatch(
                "mirror needs FC of the opposite category".into(),
            ));
        }
        let actions = fc_op
            .pairs()
            .iter()
            .map(|p| {
                self.fc
                    .pair_id(p.source, p.k, p.h)
                    .map(|q| self.action(q).clone())
                    .ok_or_else(|| NatSysError::ShapeMismatch("pair has no mirror".into()))
            })
            .collect::<Result<_, _>>()?;
        let values = self.functor.values().to_vec();
        let functor = AbFunctor::from_tables(fc_op.category().clone(), values, actions)?;
        Ok(NaturalSystem { fc: fc_op, functor })
    }

    /// Whether `D(1_X, f)` is invertible for every `f: X → Y` marked in
    /// `inverted`.
    pub fn is_local_for(&self, inverted: &[bool]) -> Result<bool, NatSysError> {
        Ok(self.locality_failure(inverted, Side::Left)?.is_none())
    }

    /// Whether `D(f, 1_Y)` is invertible for every marked `f`.
    pub fn is_colocal_for(&self, inverted: &[bool]) -> Result<bool, NatSysError> {
        Ok(self.locality_failure(inverted, Side::Right)?.is_none())
    }

    /// First marked `f` whose `D(1_X, f)` is not invertible.
    pub fn first_nonlocal(&self, inverted: &[bool]) -> Result<Option<MorphismId>, NatSysError> {
        self.locality_failure(inverted, Side::Left)
    }

    /// First marked `f` whose `D(f, 1_Y)` is not invertible.
    pub fn first_noncolocal(&self, inverted: &[bool]) -> Result<Option<MorphismId>, NatSysError> {
        self.locality_failure(inverted, Side::Right)
    }

    fn locality_failure(&self, inverted: &[bool], side: Side) -> Result<Option<MorphismId>, NatSysError> {
        let c = self.base();
        if inverted.len() != c.morphism_count() {
            return Err(NatSysError::ShapeMismatch("one flag per morphism expected".into()));
        }
        for f in (0..c.morphism_count()).filter(|&f| inverted[f]) {
            let (x, y) = (c.source(f), c.target(f));
            let p = match side {
                Side::Left => self.fc.right(c.identity(x), f),
                Side::Right => self.fc.left(c.identity(y), f),
            }
            .expect("pair exists in FC");
            if !self.action(p).is_iso() {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_fc() -> Arc<FactorizationCategory> {
        Arc::new(FactorizationCategory::build(Arc::new(FiniteCategory::arrow())))
    }

    #[test]
    fn constant_systems_are_valid() {
        for g in [
            PresentedGroup::free(1),
            PresentedGroup::trivial(),
            PresentedGroup::cyclic(2),
        ] {
            let d = NaturalSystem::constant(arrow_fc(), &g);
            assert!(d.validate().is_ok());
        }
        let t = Arc::new(FactorizationCategory::build(Arc::new(FiniteCategory::terminal())));
        assert!(NaturalSystem::constant(t, &PresentedGroup::free(1)).validate().is_ok());
    }

    #[test]
    fn mutation_of_decomposable_action_is_caught() {
        // On Z/2, (g, g) = (1, g)(g, 1) so its action is forced.
        let c = Arc::new(FiniteCategory::cyclic_group(2));
        let fc = Arc::new(FactorizationCategory::build(c));
        let d = NaturalSystem::constant(fc.clone(), &PresentedGroup::free(1));
        let p = fc.pair_id(0, 1, 1).unwrap();
        let bad = d
            .functor()
            .with_action(p, GroupHom::scalar(&PresentedGroup::free(1), 2));
        match NaturalSystem::new(fc, bad) {
            Err(NatSysError::Invalid(r)) => assert!(!r.is_ok()),
            other => panic!("mutation accepted: {other:?}"),
        }
    }

    #[test]
    fn sign_module_from_bifunctor() {
        let c = Arc::new(FiniteCategory::cyclic_group(2));
        let fc = Arc::new(FactorizationCategory::build(c.clone()));
        let p = Arc::new(c.opposite().product(&c));
        let z = PresentedGroup::free(1);
        // (h, k) acts by the sign of k
        let matrices = (0..p.morphism_count())
            .map(|m| IntMatrix::scalar(1, if m % 2 == 1 { -1 } else { 1 }))
            .collect();
        let b = AbFunctor::from_matrices(p, vec![z.clone()], matrices).unwrap();
        let d = NaturalSystem::from_bifunctor(fc.clone(), &b).unwrap();
        assert!(d.validate().is_ok());
        let g = 1;
        assert_eq!(d.action_of(0, 0, g).unwrap().matrix(), &IntMatrix::scalar(1, -1));
        assert_eq!(d.action_of(0, g, 0).unwrap().matrix(), &IntMatrix::scalar(1, 1));
        assert_eq!(d.value(c.identity(0)), &z);
    }

    #[test]
    fn arrow_system_locality() {
        // D(1_x) = D(1_y) = Z, D(f) = 0
        let fc = arrow_fc();
        let c = fc.base().clone();
        let f = c.morphism_by_name("f").unwrap();
        let mut values = vec![PresentedGroup::free(1); 3];
        values[f] = PresentedGroup::trivial();
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        left.insert((c.identity(1), f), IntMatrix::zeros(0, 1));
        right.insert((c.identity(0), f), IntMatrix::zeros(0, 1));
        let d = NaturalSystem::from_generators(fc, values, &left, &right).unwrap();
        let inverted = vec![true, true, true];
        assert!(!d.is_local_for(&inverted).unwrap());
        assert_eq!(d.first_nonlocal(&inverted).unwrap(), Some(f));
    }

    #[test]
    fn mirror_round_trip() {
        let c = Arc::new(FiniteCategory::cyclic_group(3));
        let fc = Arc::new(FactorizationCategory::build(c.clone()));
        let fc_op = Arc::new(FactorizationCategory::build(Arc::new(c.opposite())));
        let d = NaturalSystem::constant(fc.clone(), &PresentedGroup::cyclic(4));
        let m = d.mirror(fc_op.clone()).unwrap();
        assert!(m.validate().is_ok());
        let back = m.mirror(fc).unwrap();
        assert_eq!(back, d);
    }
}
