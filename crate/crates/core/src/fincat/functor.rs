use std::fmt;
use std::sync::Arc;

use super::{FinCatError, FiniteCategory, MorphismId, ObjectId, Report};

fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A functor between finite categories, stored as object and morphism tables.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<ObjectId>,
    morphisms: Vec<MorphismId>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for Functor {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Ends { morphism: MorphismId },
    Identity { object: ObjectId },
    Composition { f: MorphismId, g: MorphismId },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ends { morphism } => write!(f, "image of morphism {morphism} has wrong source or target"),
            Self::Identity { object } => write!(f, "identity of object {object} not preserved"),
            Self::Composition { f: a, g } => write!(f, "composite of ({a}, {g}) not preserved"),
        }
    }
}

impl Functor {
    /// Builds and exhaustively validates a functor.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjectId>,
        morphisms: Vec<MorphismId>,
    ) -> Result<Self, FinCatError> {
        let f = Self::from_tables(source, target, objects, morphisms)?;
        let report = f.validate();
        if report.is_ok() {
            Ok(f)
        } else {
            Err(FinCatError::InvalidFunctor(report))
        }
    }

    /// Range checks only; see [`Functor::validate`].
    pub fn from_tables(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjectId>,
        morphisms: Vec<MorphismId>,
    ) -> Result<Self, FinCatError> {
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return Err(FinCatError::Malformed("functor table sizes".into()));
        }
        if objects.iter().any(|&x| x >= target.object_count())
            || morphisms.iter().any(|&f| f >= target.morphism_count())
        {
            return Err(FinCatError::Malformed("functor image out of range".into()));
        }
        Ok(Functor {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub(crate) fn unchecked(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjectId>,
        morphisms: Vec<MorphismId>,
    ) -> Self {
        debug_assert!(objects.len() == source.object_count() && morphisms.len() == source.morphism_count());
        Functor {
            source,
            target,
            objects,
            morphisms,
        }
    }

    pub fn validate(&self) -> Report<FunctorViolation> {
        let (c, d) = (&*self.source, &*self.target);
        let mut report = Report::default();
        for f in 0..c.morphism_count() {
            let g = self.morphisms[f];
            if d.source(g) != self.objects[c.source(f)] || d.target(g) != self.objects[c.target(f)] {
                report.push(FunctorViolation::Ends { morphism: f });
            }
        }
        for x in 0..c.object_count() {
            if self.morphisms[c.identity(x)] != d.identity(self.objects[x]) {
                report.push(FunctorViolation::Identity { object: x });
            }
        }
        if !report.is_ok() {
            return report;
        }
        let out = c.outgoing();
        for f in 0..c.morphism_count() {
            for &g in &out[c.target(f)] {
                let gf = c.composite(g, f).expect("validated category");
                if d.composite(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    report.push(FunctorViolation::Composition { f, g });
                }
            }
        }
        report
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.object_count()).collect();
        let morphisms = (0..c.morphism_count()).collect();
        Functor {
            source: c.clone(),
            target: c,
            objects,
            morphisms,
        }
    }

    /// Constant functor at object `x` of `target`.
    pub fn constant(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, x: ObjectId) -> Self {
        let one = target.identity(x);
        Functor {
            objects: vec![x; source.object_count()],
            morphisms: vec![one; source.morphism_count()],
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    #[inline]
    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.objects[x]
    }

    #[inline]
    pub fn morphism(&self, f: MorphismId) -> MorphismId {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[MorphismId] {
        &self.morphisms
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.source, &self.target)
            && self.objects.iter().enumerate().all(|(i, &x)| i == x)
            && self.morphisms.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Functor, inner: &Functor) -> Result<Functor, FinCatError> {
        if !same_category(&inner.target, &outer.source) {
            return Err(FinCatError::ShapeMismatch("functor composition".into()));
        }
        Ok(Functor {
            source: inner.source.clone(),
            target: outer.target.clone(),
            objects: inner.objects.iter().map(|&x| outer.objects[x]).collect(),
            morphisms: inner.morphisms.iter().map(|&f| outer.morphisms[f]).collect(),
        })
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self, source_op: Arc<FiniteCategory>, target_op: Arc<FiniteCategory>) -> Functor {
        Functor {
            source: source_op,
            target: target_op,
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }
}

/// A natural transformation `α: φ ⇒ ψ` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    source: Functor,
    target: Functor,
    components: Vec<MorphismId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaturalityViolation {
    ComponentEnds { object: ObjectId },
    Square { morphism: MorphismId },
}

impl fmt::Display for NaturalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ComponentEnds { object } => write!(f, "component at object {object} has wrong ends"),
            Self::Square { morphism } => write!(f, "naturality square at morphism {morphism} does not commute"),
        }
    }
}

impl NaturalTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<MorphismId>) -> Result<Self, FinCatError> {
        let t = Self::from_tables(source, target, components)?;
        let report = t.validate();
        if report.is_ok() {
            Ok(t)
        } else {
            Err(FinCatError::InvalidTransformation(report))
        }
    }

    pub fn from_tables(source: Functor, target: Functor, components: Vec<MorphismId>) -> Result<Self, FinCatError> {
        if !same_category(&source.source, &target.source) || !same_category(&source.target, &target.target) {
            return Err(FinCatError::ShapeMismatch("functors are not parallel".into()));
        }
        if components.len() != source.source.object_count()
            || components.iter().any(|&f| f >= source.target.morphism_count())
        {
            return Err(FinCatError::Malformed("component table".into()));
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    pub(crate) fn unchecked(source: Functor, target: Functor, components: Vec<MorphismId>) -> Self {
        NaturalTransformation {
            source,
            target,
            components,
        }
    }

    pub fn validate(&self) -> Report<NaturalityViolation> {
        let (phi, psi) = (&self.source, &self.target);
        let (c, d) = (&*phi.source, &*phi.target);
        let mut report = Report::default();
        for x in 0..c.object_count() {
            let a = self.components[x];
            if d.source(a) != phi.object(x) || d.target(a) != psi.object(x) {
                report.push(NaturalityViolation::ComponentEnds { object: x });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in 0..c.morphism_count() {
            let (x, y) = (c.source(f), c.target(f));
            let lhs = d.composite(psi.morphism(f), self.components[x]);
            let rhs = d.composite(self.components[y], phi.morphism(f));
            if lhs.is_none() || lhs != rhs {
                report.push(NaturalityViolation::Square { morphism: f });
            }
        }
        report
    }

    /// `α^op: ψ^op ⇒ φ^op` between opposite categories, same components.
    pub fn opposite(&self, source_op: Arc<FiniteCategory>, target_op: Arc<FiniteCategory>) -> Self {
        NaturalTransformation {
            source: self.target.opposite(source_op.clone(), target_op.clone()),
            target: self.source.opposite(source_op, target_op),
            components: self.components.clone(),
        }
    }

    pub fn identity(phi: &Functor) -> Self {
        let d = &phi.target;
        let components = phi.objects.iter().map(|&x| d.identity(x)).collect();
        NaturalTransformation {
            source: phi.clone(),
            target: phi.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn domain(&self) -> &Arc<FiniteCategory> {
        &self.source.source
    }

    pub fn codomain(&self) -> &Arc<FiniteCategory> {
        &self.source.target
    }

    #[inline]
    pub fn component(&self, x: ObjectId) -> MorphismId {
        self.components[x]
    }

    pub fn components(&self) -> &[MorphismId] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.components.iter().all(|&a| self.source.target.is_identity(a))
    }

    /// `(βα)_X = β_X ∘ α_X`.
    pub fn vertical_compose(beta: &Self, alpha: &Self) -> Result<Self, FinCatError> {
        if alpha.target != beta.source {
            return Err(FinCatError::ShapeMismatch("vertical composition".into()));
        }
        let d = &alpha.source.target;
        let components = alpha
            .components
            .iter()
            .zip(&beta.components)
            .map(|(&a, &b)| d.compose(b, a))
            .collect::<Result<_, _>>()?;
        Ok(NaturalTransformation {
            source: alpha.source.clone(),
            target: beta.target.clone(),
            components,
        })
    }

    /// `β * α: ξφ ⇒ ζψ` for `α: φ ⇒ ψ` (C → D) and `β: ξ ⇒ ζ` (D → E).
    /// Both expressions `β_{ψX} ∘ ξ(α_X)` and `ζ(α_X) ∘ β_{φX}` are evaluated
    /// and must agree.
    pub fn horizontal_compose(beta: &Self, alpha: &Self) -> Result<Self, FinCatError> {
        if !same_category(alpha.codomain(), beta.domain()) {
            return Err(FinCatError::ShapeMismatch("horizontal composition".into()));
        }
        let (phi, psi) = (&alpha.source, &alpha.target);
        let (xi, zeta) = (&beta.source, &beta.target);
        let e = &*xi.target;
        let mut components = Vec::with_capacity(alpha.components.len());
        for (x, &a) in alpha.components.iter().enumerate() {
            let one = e.compose(beta.components[psi.object(x)], xi.morphism(a))?;
            let two = e.compose(zeta.morphism(a), beta.components[phi.object(x)])?;
            if one != two {
                return Err(FinCatError::NaturalityBroken(x));
            }
            components.push(one);
        }
        Ok(NaturalTransformation {
            source: Functor::compose(xi, phi)?,
            target: Functor::compose(zeta, psi)?,
            components,
        })
    }

    /// `β * 1_φ`.
    pub fn whisker_right(beta: &Self, phi: &Functor) -> Result<Self, FinCatError> {
        Self::horizontal_compose(beta, &Self::identity(phi))
    }

    /// `1_ξ * α`.
    pub fn whisker_left(xi: &Functor, alpha: &Self) -> Result<Self, FinCatError> {
        Self::horizontal_compose(&Self::identity(xi), alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::arrow())
    }

    #[test]
    fn identity_functor_is_valid() {
        let c = arrow();
        let id = Functor::identity(c.clone());
        assert!(id.validate().is_ok());
        assert_eq!(Functor::compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn mutated_functor_is_rejected() {
        let c = Arc::new(FiniteCategory::cyclic_group(3));
        let id = Functor::identity(c.clone());
        let mut morphisms = id.morphism_map().to_vec();
        morphisms[1] = 2;
        assert!(Functor::new(c.clone(), c, id.object_map().to_vec(), morphisms).is_err());
    }

    #[test]
    fn unit_law_for_horizontal_composition() {
        let c = arrow();
        let t = Arc::new(FiniteCategory::terminal());
        let id_c = Functor::identity(c.clone());
        // collapse onto y, with α: 1 ⇒ ιπ given by f and 1_y
        let pi = Functor::new(c.clone(), t.clone(), vec![0, 0], vec![0, 0, 0]).unwrap();
        let iota = Functor::new(t.clone(), c.clone(), vec![1], vec![1]).unwrap();
        let ip = Functor::compose(&iota, &pi).unwrap();
        let f = c.morphism_by_name("f").unwrap();
        let alpha = NaturalTransformation::new(id_c.clone(), ip, vec![f, c.identity(1)]).unwrap();
        let one = NaturalTransformation::identity(&id_c);
        assert_eq!(NaturalTransformation::horizontal_compose(&alpha, &one).unwrap(), alpha);
        assert_eq!(NaturalTransformation::horizontal_compose(&one, &alpha).unwrap(), alpha);
        assert_eq!(NaturalTransformation::vertical_compose(&one, &one).unwrap(), one);
        // the unit satisfies α * α = α up to its source/target functors
        let aa = NaturalTransformation::horizontal_compose(&alpha, &alpha).unwrap();
        assert_eq!(aa.components(), alpha.components());
    }

    #[test]
    fn non_natural_components_rejected() {
        let c = arrow();
        let id = Functor::identity(c.clone());
        let f = c.morphism_by_name("f").unwrap();
        // α_x = 1_x, α_y = 1_y is fine; α_x = f is not an endo.
        assert!(NaturalTransformation::new(id.clone(), id.clone(), vec![0, 1]).is_ok());
        assert!(NaturalTransformation::new(id.clone(), id, vec![f, 1]).is_err());
    }
}
