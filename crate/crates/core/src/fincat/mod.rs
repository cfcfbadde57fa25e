//! Finite categories, functors and natural transformations.
//!
//! Objects and morphisms are dense indices into total tables. Composition is
//! written `compose(outer, inner)`, i.e. the juxtaposition `outer inner`.

mod category;
mod functor;
mod sequence;

use std::fmt;

pub use category::{CategoryViolation, FiniteCategory, Morphism};
pub use functor::{Functor, FunctorViolation, NaturalTransformation, NaturalityViolation};
pub use sequence::{count_sequences, enumerate_sequences, MorphismSequence};

pub type ObjectId = usize;
pub type MorphismId = usize;

/// A list of violated axioms; empty means valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report<V> {
    violations: Vec<V>,
}

impl<V> Default for Report<V> {
    fn default() -> Self {
        Report { violations: Vec::new() }
    }
}

impl<V> From<Vec<V>> for Report<V> {
    fn from(violations: Vec<V>) -> Self {
        Report { violations }
    }
}

impl<V> Report<V> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[V] {
        &self.violations
    }

    pub fn push(&mut self, v: V) {
        self.violations.push(v);
    }

    pub fn into_violations(self) -> Vec<V> {
        self.violations
    }
}

impl<V: fmt::Display> fmt::Display for Report<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FinCatError {
    #[error("morphisms {outer} and {inner} are not composable")]
    NotComposable { outer: MorphismId, inner: MorphismId },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid category:\n{0}")]
    InvalidCategory(Report<CategoryViolation>),
    #[error("invalid functor:\n{0}")]
    InvalidFunctor(Report<FunctorViolation>),
    #[error("invalid natural transformation:\n{0}")]
    InvalidTransformation(Report<NaturalityViolation>),
    #[error("square γαε = β does not commute at object {0}")]
    SquareNotCommuting(ObjectId),
    #[error("naturality broken at object {0}")]
    NaturalityBroken(ObjectId),
}
