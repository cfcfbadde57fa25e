use std::fmt;
use std::sync::Arc;

use crate::abelian::{direct_product, hom_compose, GroupHom, IntMatrix, PresentedGroup};
use crate::fincat::{FiniteCategory, Functor, MorphismId, ObjectId, Report};

use super::NatSysError;

/// A functor from a finite category into finitely presented abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbFunctor {
    category: Arc<FiniteCategory>,
    values: Vec<PresentedGroup>,
    actions: Vec<GroupHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbFunctorViolation {
    Ends { morphism: MorphismId },
    Identity { object: ObjectId },
    Composition { inner: MorphismId, outer: MorphismId },
}

impl fmt::Display for AbFunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ends { morphism } => write!(f, "action of {morphism} has the wrong source or target group"),
            Self::Identity { object } => write!(f, "identity at {object} does not act as the identity"),
            Self::Composition { inner, outer } => {
                write!(f, "action does not respect the composite of ({inner}, {outer})")
            }
        }
    }
}

impl AbFunctor {
    pub fn new(
        category: Arc<FiniteCategory>,
        values: Vec<PresentedGroup>,
        actions: Vec<GroupHom>,
    ) -> Result<Self, NatSysError> {
        let f = Self::from_tables(category, values, actions)?;
        let report = f.validate();
        if report.is_ok() {
            Ok(f)
        } else {
            Err(NatSysError::Invalid(report))
        }
    }

    /// Size checks only.
    pub fn from_tables(
        category: Arc<FiniteCategory>,
        values: Vec<PresentedGroup>,
        actions: Vec<GroupHom>,
    ) -> Result<Self, NatSysError> {
        if values.len() != category.object_count() || actions.len() != category.morphism_count() {
            return Err(NatSysError::ShapeMismatch("value or action table size".into()));
        }
        Ok(AbFunctor {
            category,
            values,
            actions,
        })
    }

    /// Builds the action of each morphism from matrices on generators.
    pub fn from_matrices(
        category: Arc<FiniteCategory>,
        values: Vec<PresentedGroup>,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self, NatSysError> {
        if matrices.len() != category.morphism_count() || values.len() != category.object_count() {
            return Err(NatSysError::ShapeMismatch("action table size".into()));
        }
        let actions = matrices
            .into_iter()
            .enumerate()
            .map(|(f, m)| {
                let (s, t) = (&values[category.source(f)], &values[category.target(f)]);
                GroupHom::new(s.clone(), t.clone(), m)
            })
            .collect::<Result<_, _>>()?;
        Self::new(category, values, actions)
    }

    pub fn constant(category: Arc<FiniteCategory>, g: &PresentedGroup) -> Self {
        let id = GroupHom::identity(g);
        AbFunctor {
            values: vec![g.clone(); category.object_count()],
            actions: vec![id; category.morphism_count()],
            category,
        }
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    #[inline]
    pub fn value(&self, x: ObjectId) -> &PresentedGroup {
        &self.values[x]
    }

    #[inline]
    pub fn action(&self, f: MorphismId) -> &GroupHom {
        &self.actions[f]
    }

    pub fn values(&self) -> &[PresentedGroup] {
        &self.values
    }

    pub fn actions(&self) -> &[GroupHom] {
        &self.actions
    }

    pub fn validate(&self) -> Report<AbFunctorViolation> {
        let c = &*self.category;
        let mut report = Report::default();
        for f in 0..c.morphism_count() {
            let a = &self.actions[f];
            if *a.source() != self.values[c.source(f)] || *a.target() != self.values[c.target(f)] || !a.witness_holds()
            {
                report.push(AbFunctorViolation::Ends { morphism: f });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for x in 0..c.object_count() {
            if !self.actions[c.identity(x)].is_identity() {
                report.push(AbFunctorViolation::Identity { object: x });
            }
        }
        let out = c.outgoing();
        for inner in 0..c.morphism_count() {
            for &outer in &out[c.target(inner)] {
                if c.is_identity(inner) || c.is_identity(outer) {
                    // covered by the identity check
                    continue;
                }
                let comp = c.composite(outer, inner).expect("valid category");
                let via = hom_compose(&self.actions[outer], &self.actions[inner]).expect("checked ends");
                if !via.equals(&self.actions[comp]) {
                    report.push(AbFunctorViolation::Composition { inner, outer });
                }
            }
        }
        report
    }

    /// `self ∘ g` for a functor `g` into this functor's category.
    pub fn pullback(&self, g: &Functor) -> Result<AbFunctor, NatSysError> {
        if **g.target() != *self.category {
            return Err(NatSysError::ShapeMismatch(
                "pullback along a functor into another category".into(),
            ));
        }
        let b = g.source();
        Ok(AbFunctor {
            category: b.clone(),
            values: (0..b.object_count())
                .map(|x| self.values[g.object(x)].clone())
                .collect(),
            actions: (0..b.morphism_count())
                .map(|f| self.actions[g.morphism(f)].clone())
                .collect(),
        })
    }

    /// Pointwise direct sum.
    pub fn direct_sum(parts: &[&AbFunctor]) -> Result<AbFunctor, NatSysError> {
        let Some(first) = parts.first() else {
            return Err(NatSysError::ShapeMismatch("empty direct sum".into()));
        };
        let c = first.category.clone();
        if parts.iter().any(|p| *p.category != *c) {
            return Err(NatSysError::ShapeMismatch(
                "direct sum over different categories".into(),
            ));
        }
        let values: Vec<PresentedGroup> = (0..c.object_count())
            .map(|x| direct_product(&parts.iter().map(|p| p.values[x].clone()).collect::<Vec<_>>()))
            .collect();
        let actions = (0..c.morphism_count())
            .map(|f| {
                let blocks: Vec<&IntMatrix> = parts.iter().map(|p| p.actions[f].matrix()).collect();
                GroupHom::new(
                    values[c.source(f)].clone(),
                    values[c.target(f)].clone(),
                    IntMatrix::block_diagonal(&blocks),
                )
            })
            .collect::<Result<_, _>>()?;
        Ok(AbFunctor {
            category: c,
            values,
            actions,
        })
    }

    /// Same data over a category that is equal as a table.
    pub(crate) fn rebased(&self, category: Arc<FiniteCategory>) -> AbFunctor {
        debug_assert_eq!(*category, *self.category);
        AbFunctor {
            category,
            values: self.values.clone(),
            actions: self.actions.clone(),
        }
    }

    /// Replaces the action of one morphism without revalidation.
    pub fn with_action(&self, f: MorphismId, action: GroupHom) -> AbFunctor {
        let mut out = self.clone();
        out.actions[f] = action;
        out
    }
}
