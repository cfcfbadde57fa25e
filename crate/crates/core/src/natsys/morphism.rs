use std::fmt;
use std::sync::Arc;

use crate::abelian::{hom_compose, GroupHom};
use crate::factorization::{factor_nat, factor_two_morphism, FactorizationCategory, TwoMorphism};
use crate::fincat::{Functor, MorphismId, NaturalTransformation};

use super::{NatSysError, NaturalSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityFailure {
    /// Pair id in the factorization category of the target base.
    pub pair: MorphismId,
}

impl fmt::Display for NaturalityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair {}", self.pair)
    }
}

/// A 1-morphism `(α, t)` of `Nat_F`: `α: φ ⇒ ψ: 𝒟 → C` together with
/// `t: D F(α) ⇒ E` for systems `D` on `C` and `E` on `𝒟`.
///
/// The anchor `α` is stored explicitly; for the plain morphisms `(φ, t)` of
/// `Nat` it is the identity `1_φ`.
#[derive(Clone, Debug)]
pub struct NatSysMorphism {
    anchor: NaturalTransformation,
    source: Arc<NaturalSystem>,
    target: Arc<NaturalSystem>,
    pulled: Arc<NaturalSystem>,
    components: Vec<GroupHom>,
}

impl NatSysMorphism {
    pub fn new(
        anchor: NaturalTransformation,
        source: Arc<NaturalSystem>,
        target: Arc<NaturalSystem>,
        components: Vec<GroupHom>,
    ) -> Result<Self, NatSysError> {
        let pulled = Arc::new(source.pullback_along_nat(target.factorization().clone(), &anchor)?);
        let m = Self {
            anchor,
            source,
            target,
            pulled,
            components,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), NatSysError> {
        let fd = self.target.factorization();
        let d = fd.base();
        if self.components.len() != d.morphism_count() {
            return Err(NatSysError::ShapeMismatch("one component per morphism expected".into()));
        }
        for (s, t) in self.components.iter().enumerate() {
            if t.source() != self.pulled.value(s) || t.target() != self.target.value(s) {
                return Err(NatSysError::ShapeMismatch(format!(
                    "component at {} has wrong ends",
                    d.morphism_name(s)
                )));
            }
        }
        for (p, pair) in fd.pairs().iter().enumerate() {
            let lhs = hom_compose(&self.components[pair.target], self.pulled.action(p))?;
            let rhs = hom_compose(self.target.action(p), &self.components[pair.source])?;
            if !lhs.equals(&rhs) {
                return Err(NatSysError::NotNatural(NaturalityFailure { pair: p }));
            }
        }
        Ok(())
    }

    /// `(1_{1_C}, 1_D)`.
    pub fn identity(d: Arc<NaturalSystem>) -> Self {
        let c = d.base().clone();
        let anchor = NaturalTransformation::identity(&Functor::identity(c));
        let components = (0..d.base().morphism_count())
            .map(|f| GroupHom::identity(d.value(f)))
            .collect();
        NatSysMorphism {
            anchor,
            source: d.clone(),
            target: d.clone(),
            pulled: d,
            components,
        }
    }

    /// `(α, 1_{D F(α)})`: the tautological morphism into the pulled-back system.
    pub fn tautological(
        d: Arc<NaturalSystem>,
        fd: Arc<FactorizationCategory>,
        alpha: &NaturalTransformation,
    ) -> Result<Self, NatSysError> {
        let pulled = Arc::new(d.pullback_along_nat(fd, alpha)?);
        let components = (0..pulled.base().morphism_count())
            .map(|f| GroupHom::identity(pulled.value(f)))
            .collect();
        Ok(NatSysMorphism {
            anchor: alpha.clone(),
            source: d,
            target: pulled.clone(),
            pulled,
            components,
        })
    }

    pub fn anchor(&self) -> &NaturalTransformation {
        &self.anchor
    }

    /// `D`, on the codomain of the anchor.
    pub fn source(&self) -> &Arc<NaturalSystem> {
        &self.source
    }

    /// `E`, on the domain of the anchor.
    pub fn target(&self) -> &Arc<NaturalSystem> {
        &self.target
    }

    /// `D F(α)`.
    pub fn pulled(&self) -> &Arc<NaturalSystem> {
        &self.pulled
    }

    #[inline]
    pub fn component(&self, sigma: MorphismId) -> &GroupHom {
        &self.components[sigma]
    }

    pub fn components(&self) -> &[GroupHom] {
        &self.components
    }

    /// Componentwise equality modulo relations, including the anchor.
    pub fn equals(&self, other: &NatSysMorphism) -> bool {
        self.anchor == other.anchor
            && *self.source == *other.source
            && *self.target == *other.target
            && self.components.iter().zip(&other.components).all(|(a, b)| a.equals(b))
    }

    /// `t * 1_{F(β)}` for `β: 𝒟′ → 𝒟`: components `t_{F(β)(σ)}`, from `D` to
    /// `E F(β)`, anchored at `α * β`.
    pub fn whisker(&self, beta: &NaturalTransformation, fd2: Arc<FactorizationCategory>) -> Result<Self, NatSysError> {
        let fb = factor_nat(beta, &fd2, self.target.factorization())?;
        let target = Arc::new(self.target.pullback(fd2.clone(), &fb)?);
        let anchor = NaturalTransformation::horizontal_compose(&self.anchor, beta)?;
        let components = (0..fd2.base().morphism_count())
            .map(|s| self.components[fb.object(s)].clone())
            .collect();
        let pulled = Arc::new(self.source.pullback_along_nat(fd2, &anchor)?);
        Ok(NatSysMorphism {
            anchor,
            source: self.source.clone(),
            target,
            pulled,
            components,
        })
    }

    /// `(β, s)(α, t) = (α * β, s (t * 1_{F(β)}))`, where `self = (α, t)` and
    /// `next = (β, s)` starts at the target of `self`.
    pub fn then(&self, next: &NatSysMorphism) -> Result<Self, NatSysError> {
        if *next.source != *self.target {
            return Err(NatSysError::ShapeMismatch(
                "morphisms of systems are not composable".into(),
            ));
        }
        let fd2 = next.target.factorization().clone();
        let w = self.whisker(&next.anchor, fd2)?;
        let components = w
            .components
            .iter()
            .zip(&next.components)
            .map(|(t, s)| hom_compose(s, t))
            .collect::<Result<_, _>>()?;
        Ok(NatSysMorphism {
            anchor: w.anchor,
            source: self.source.clone(),
            target: next.target.clone(),
            pulled: w.pulled,
            components,
        })
    }
}

/// `1_D * F(ε, γ): D F(α) ⇒ D F(β)`, with component `D(ε_X, γ_Y)` at
/// `σ: X → Y`, as a morphism of systems on `𝒟` anchored at the identity.
pub fn act_by_two_morphism(
    d: &NaturalSystem,
    two: &TwoMorphism,
    fd: Arc<FactorizationCategory>,
) -> Result<NatSysMorphism, NatSysError> {
    let feg = factor_two_morphism(two, &fd, d.factorization())?;
    let from = Arc::new(d.pullback_along_nat(fd.clone(), &two.alpha)?);
    let to = Arc::new(d.pullback_along_nat(fd.clone(), &two.beta)?);
    let components = feg.components().iter().map(|&p| d.action(p).clone()).collect();
    let anchor = NaturalTransformation::identity(&Functor::identity(fd.base().clone()));
    Ok(NatSysMorphism {
        anchor,
        source: from.clone(),
        target: to,
        pulled: from,
        components,
    })
}

/// A 2-morphism `(ε, γ): (α, t) ⇒ (β, s)` of `Nat_F`, subject to
/// `t = s (1_D * F(ε, γ))`.
#[derive(Clone, Debug)]
pub struct NatFTwoMorphism {
    pub two: TwoMorphism,
    pub from: NatSysMorphism,
    pub to: NatSysMorphism,
}

impl NatFTwoMorphism {
    pub fn new(two: TwoMorphism, from: NatSysMorphism, to: NatSysMorphism) -> Result<Self, NatSysError> {
        if from.anchor != two.alpha || to.anchor != two.beta {
            return Err(NatSysError::ShapeMismatch(
                "2-morphism does not match the anchors".into(),
            ));
        }
        if *from.source != *to.source || *from.target != *to.target {
            return Err(NatSysError::ShapeMismatch("1-morphisms are not parallel".into()));
        }
        let fd = from.target.factorization().clone();
        let act = act_by_two_morphism(&from.source, &two, fd)?;
        for (sigma, (t, a)) in from.components.iter().zip(&act.components).enumerate() {
            let sa = hom_compose(&to.components[sigma], a)?;
            if !sa.equals(t) {
                return Err(NatSysError::TwoMorphismInvalid(sigma));
            }
        }
        Ok(NatFTwoMorphism { two, from, to })
    }

    /// `(1, 1): (α, t) ⇒ (α, t)`.
    pub fn identity(m: &NatSysMorphism) -> Self {
        NatFTwoMorphism {
            two: TwoMorphism::identity(&m.anchor),
            from: m.clone(),
            to: m.clone(),
        }
    }

    /// Given `(β, s)` and `(ε, γ): α ⇒ β`, the unique `t = s (1_D * F(ε, γ))`
    /// making `(ε, γ): (α, t) ⇒ (β, s)`.
    pub fn induced_from_target(two: TwoMorphism, to: NatSysMorphism) -> Result<Self, NatSysError> {
        if to.anchor != two.beta {
            return Err(NatSysError::ShapeMismatch("target anchor differs from β".into()));
        }
        let fd = to.target.factorization().clone();
        let act = act_by_two_morphism(&to.source, &two, fd)?;
        let components = act
            .components
            .iter()
            .zip(&to.components)
            .map(|(a, s)| hom_compose(s, a))
            .collect::<Result<Vec<_>, _>>()?;
        let from = NatSysMorphism {
            anchor: two.alpha.clone(),
            source: to.source.clone(),
            target: to.target.clone(),
            pulled: act.source.clone(),
            components,
        };
        Ok(NatFTwoMorphism { two, from, to })
    }

    /// Vertical composite with `next: (α′, t′) ⇒ (β, s)`.
    pub fn then(&self, next: &NatFTwoMorphism) -> Result<Self, NatSysError> {
        let two = self.two.then(&next.two)?;
        Self::new(two, self.from.clone(), next.to.clone())
    }

    /// Horizontal composite with `inner: (α′, t′) ⇒ (β′, s′)` (over
    /// `𝒟′ → 𝒟`): `(ε * ε′, γ * γ′): (α′, t′)(α, t) ⇒ (β′, s′)(β, s)`.
    pub fn horizontal(&self, inner: &NatFTwoMorphism) -> Result<Self, NatSysError> {
        let two = self.two.horizontal(&inner.two)?;
        let from = self.from.then(&inner.from)?;
        let to = self.to.then(&inner.to)?;
        Self::new(two, from, to)
    }
}
