//! The factorization category `FC` and the 2-functor `F`.
//!
//! Objects of `FC` are the morphisms of `C`, with the same ids. A morphism
//! `(h, k): f → g` is a pair with `k f h = g`; composition is
//! `(h′, k′)(h, k) = (h h′, k′ k)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCatError, FiniteCategory, Functor, Morphism, MorphismId, NaturalTransformation};

/// A morphism `(h, k): source → target` of `FC`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FPair {
    pub source: MorphismId,
    pub target: MorphismId,
    pub h: MorphismId,
    pub k: MorphismId,
}

#[derive(Clone, Debug)]
pub struct FactorizationCategory {
    base: Arc<FiniteCategory>,
    category: Arc<FiniteCategory>,
    pairs: Vec<FPair>,
    index: HashMap<(MorphismId, MorphismId, MorphismId), MorphismId>,
}

// FC is determined by its base.
impl PartialEq for FactorizationCategory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || self.base == other.base
    }
}

impl Eq for FactorizationCategory {}

impl FactorizationCategory {
    /// Materializes `FC`. Pair ids follow `(source, target, h, k)` order.
    pub fn build(c: Arc<FiniteCategory>) -> Self {
        let incoming = c.incoming();
        let outgoing = c.outgoing();
        let mut pairs = Vec::new();
        for f in 0..c.morphism_count() {
            for &h in &incoming[c.source(f)] {
                let fh = c.composite(f, h).expect("valid category");
                for &k in &outgoing[c.target(f)] {
                    let g = c.composite(k, fh).expect("valid category");
                    pairs.push(FPair {
                        source: f,
                        target: g,
                        h,
                        k,
                    });
                }
            }
        }
        pairs.sort_unstable();
        let index: HashMap<_, _> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.h, p.k), i))
            .collect();

        let objects = c.morphisms().iter().map(|f| f.name.clone()).collect();
        let morphisms = pairs
            .iter()
            .map(|p| Morphism {
                name: format!(
                    "({},{}):{}",
                    c.morphism_name(p.h),
                    c.morphism_name(p.k),
                    c.morphism_name(p.source)
                ),
                source: p.source,
                target: p.target,
            })
            .collect();
        let identities = (0..c.morphism_count())
            .map(|f| index[&(f, c.identity(c.source(f)), c.identity(c.target(f)))])
            .collect();
        let m = pairs.len();
        let mut composition = vec![None; m * m];
        for (i, inner) in pairs.iter().enumerate() {
            for (o, outer) in pairs.iter().enumerate() {
                if outer.source != inner.target {
                    continue;
                }
                let h = c.composite(inner.h, outer.h).expect("valid category");
                let k = c.composite(outer.k, inner.k).expect("valid category");
                composition[o * m + i] = Some(index[&(inner.source, h, k)]);
            }
        }
        let category = FiniteCategory::from_tables(objects, morphisms, identities, composition)
            .expect("factorization tables are in range");
        FactorizationCategory {
            base: c,
            category: Arc::new(category),
            pairs,
            index,
        }
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    /// `FC` as a finite category.
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn pairs(&self) -> &[FPair] {
        &self.pairs
    }

    pub fn pair(&self, id: MorphismId) -> FPair {
        self.pairs[id]
    }

    /// Id of `(h, k)` out of `f`, if it is a morphism of `FC`.
    pub fn pair_id(&self, f: MorphismId, h: MorphismId, k: MorphismId) -> Option<MorphismId> {
        self.index.get(&(f, h, k)).copied()
    }

    /// `(h, 1): f → f h`.
    pub fn left(&self, f: MorphismId, h: MorphismId) -> Option<MorphismId> {
        self.pair_id(f, h, self.base.identity(self.base.target(f)))
    }

    /// `(1, k): f → k f`.
    pub fn right(&self, f: MorphismId, k: MorphismId) -> Option<MorphismId> {
        self.pair_id(f, self.base.identity(self.base.source(f)), k)
    }

    /// Identity `(1, 1)` on `f`.
    pub fn identity_pair(&self, f: MorphismId) -> MorphismId {
        self.category.identity(f)
    }
}

/// `F(φ)`: `f ↦ φ(f)`, `(h, k) ↦ (φ(h), φ(k))`.
pub fn factor_functor(
    phi: &Functor,
    fd: &FactorizationCategory,
    fc: &FactorizationCategory,
) -> Result<Functor, FinCatError> {
    factor_nat(&NaturalTransformation::identity(phi), fd, fc)
}

/// `F(α)` for `α: φ ⇒ ψ: 𝒟 → C`: `f ↦ α_Y φ(f) = ψ(f) α_X`,
/// `(h, k) ↦ (φ(h), ψ(k))`.
pub fn factor_nat(
    alpha: &NaturalTransformation,
    fd: &FactorizationCategory,
    fc: &FactorizationCategory,
) -> Result<Functor, FinCatError> {
    check_bases(alpha, fd, fc)?;
    let (phi, psi) = (alpha.source(), alpha.target());
    let (d, c) = (&*fd.base, &*fc.base);
    let mut objects = Vec::with_capacity(d.morphism_count());
    for f in 0..d.morphism_count() {
        let (x, y) = (d.source(f), d.target(f));
        let one = c.compose(alpha.component(y), phi.morphism(f))?;
        let two = c.compose(psi.morphism(f), alpha.component(x))?;
        if one != two {
            return Err(FinCatError::NaturalityBroken(x));
        }
        objects.push(one);
    }
    let morphisms = fd
        .pairs
        .iter()
        .map(|p| {
            fc.pair_id(objects[p.source], phi.morphism(p.h), psi.morphism(p.k))
                .ok_or_else(|| FinCatError::ShapeMismatch("image pair missing from FC".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(Functor::unchecked(
        fd.category.clone(),
        fc.category.clone(),
        objects,
        morphisms,
    ))
}

fn check_bases(
    alpha: &NaturalTransformation,
    fd: &FactorizationCategory,
    fc: &FactorizationCategory,
) -> Result<(), FinCatError> {
    if **alpha.domain() != *fd.base || **alpha.codomain() != *fc.base {
        return Err(FinCatError::ShapeMismatch(
            "factorization categories do not match".into(),
        ));
    }
    Ok(())
}

/// A 2-morphism `(ε, γ): α ⇒ β` of `Cat_F`, for `α: φ ⇒ ψ`, `β: ξ ⇒ ζ`,
/// `ε: ξ ⇒ φ`, `γ: ψ ⇒ ζ` with `γ α ε = β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMorphism {
    pub epsilon: NaturalTransformation,
    pub gamma: NaturalTransformation,
    pub alpha: NaturalTransformation,
    pub beta: NaturalTransformation,
}

impl TwoMorphism {
    pub fn new(
        epsilon: NaturalTransformation,
        gamma: NaturalTransformation,
        alpha: NaturalTransformation,
        beta: NaturalTransformation,
    ) -> Result<Self, FinCatError> {
        if epsilon.target() != alpha.source() || gamma.source() != alpha.target() {
            return Err(FinCatError::ShapeMismatch("(ε, γ) does not bracket α".into()));
        }
        let gae = NaturalTransformation::vertical_compose(
            &gamma,
            &NaturalTransformation::vertical_compose(&alpha, &epsilon)?,
        )?;
        if gae.source() != beta.source() || gae.target() != beta.target() {
            return Err(FinCatError::ShapeMismatch("γαε and β have different ends".into()));
        }
        if let Some(x) = (0..beta.components().len()).find(|&x| gae.component(x) != beta.component(x)) {
            return Err(FinCatError::SquareNotCommuting(x));
        }
        Ok(TwoMorphism {
            epsilon,
            gamma,
            alpha,
            beta,
        })
    }

    /// `(1, 1): α ⇒ α`.
    pub fn identity(alpha: &NaturalTransformation) -> Self {
        TwoMorphism {
            epsilon: NaturalTransformation::identity(alpha.source()),
            gamma: NaturalTransformation::identity(alpha.target()),
            alpha: alpha.clone(),
            beta: alpha.clone(),
        }
    }

    /// Vertical composite `(ε ε′, γ′ γ)` of `self: α ⇒ α′` and `next: α′ ⇒ β`.
    pub fn then(&self, next: &TwoMorphism) -> Result<Self, FinCatError> {
        if self.beta != next.alpha {
            return Err(FinCatError::ShapeMismatch(
                "2-morphisms are not vertically composable".into(),
            ));
        }
        Ok(TwoMorphism {
            epsilon: NaturalTransformation::vertical_compose(&self.epsilon, &next.epsilon)?,
            gamma: NaturalTransformation::vertical_compose(&next.gamma, &self.gamma)?,
            alpha: self.alpha.clone(),
            beta: next.beta.clone(),
        })
    }

    /// Horizontal composite `(ε * ε′, γ * γ′): α * α′ ⇒ β * β′` where
    /// `self = (ε, γ)` lives over the outer category and `inner = (ε′, γ′)`.
    pub fn horizontal(&self, inner: &TwoMorphism) -> Result<Self, FinCatError> {
        Ok(TwoMorphism {
            epsilon: NaturalTransformation::horizontal_compose(&self.epsilon, &inner.epsilon)?,
            gamma: NaturalTransformation::horizontal_compose(&self.gamma, &inner.gamma)?,
            alpha: NaturalTransformation::horizontal_compose(&self.alpha, &inner.alpha)?,
            beta: NaturalTransformation::horizontal_compose(&self.beta, &inner.beta)?,
        })
    }
}

/// `F(ε, γ): F(α) ⇒ F(β)` with component `(ε_X, γ_Y)` at `f: X → Y`.
pub fn factor_two_morphism(
    two: &TwoMorphism,
    fd: &FactorizationCategory,
    fc: &FactorizationCategory,
) -> Result<NaturalTransformation, FinCatError> {
    let fa = factor_nat(&two.alpha, fd, fc)?;
    let fb = factor_nat(&two.beta, fd, fc)?;
    let d = &*fd.base;
    let components = (0..d.morphism_count())
        .map(|f| {
            let (x, y) = (d.source(f), d.target(f));
            fc.pair_id(fa.object(f), two.epsilon.component(x), two.gamma.component(y))
                .ok_or_else(|| FinCatError::ShapeMismatch("(ε_X, γ_Y) is not a morphism of FC".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(NaturalTransformation::unchecked(fa, fb, components))
}

/// `FC → C^op × C`, `f: X → Y ↦ (X, Y)`, `(h, k) ↦ (h, k)`. The product is
/// indexed as in [`FiniteCategory::product`].
pub fn projection_to_pair(fc: &FactorizationCategory, op_times_c: Arc<FiniteCategory>) -> Functor {
    let c = &*fc.base;
    let (n, m) = (c.object_count(), c.morphism_count());
    let objects = (0..m).map(|f| c.source(f) * n + c.target(f)).collect();
    let morphisms = fc.pairs.iter().map(|p| p.h * m + p.k).collect();
    Functor::unchecked(fc.category.clone(), op_times_c, objects, morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let t = FactorizationCategory::build(Arc::new(FiniteCategory::terminal()));
        assert_eq!(t.category().morphism_count(), 1);
        assert!(t.category().validate().is_ok());
        let a = FactorizationCategory::build(Arc::new(FiniteCategory::arrow()));
        assert_eq!(a.category().object_count(), 3);
        assert_eq!(a.category().morphism_count(), 5);
        assert!(a.category().validate().is_ok());
    }

    #[test]
    fn factorization_of_group_validates() {
        let c = Arc::new(FiniteCategory::cyclic_group(3));
        let fc = FactorizationCategory::build(c);
        assert_eq!(fc.category().morphism_count(), 27);
        assert!(fc.category().validate().is_ok());
    }

    #[test]
    fn identity_factors_to_identity() {
        let c = Arc::new(FiniteCategory::arrow());
        let fc = FactorizationCategory::build(c.clone());
        let id = Functor::identity(c);
        let f = factor_functor(&id, &fc, &fc).unwrap();
        assert!(f.validate().is_ok());
        assert!(f.is_identity());
    }

    #[test]
    fn projection_is_functor() {
        let c = Arc::new(FiniteCategory::arrow());
        let fc = FactorizationCategory::build(c.clone());
        let p = Arc::new(c.opposite().product(&c));
        let pr = projection_to_pair(&fc, p);
        assert!(pr.validate().is_ok());
        let x = c.object_by_name("x").unwrap();
        assert_eq!(pr.object(c.identity(x)), x * 2 + x);
    }
}
