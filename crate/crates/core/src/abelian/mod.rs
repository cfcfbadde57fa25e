//! Exact integer linear algebra and finitely presented abelian groups.
//!
//! Coefficient groups are restricted to finitely presented ones so that every
//! computation terminates; this is a scope restriction of the library, not a
//! hypothesis of the theory.

mod group;
mod matrix;
mod normal_form;
mod scalar;
mod subquotient;

use thiserror::Error;

pub use group::{
    direct_product, finite_order, group_invariants, hom_add, hom_compose, hom_negate, is_iso, kernel_invariants,
    GroupHom, GroupInvariants, PresentedGroup,
};
pub use matrix::IntMatrix;
pub use normal_form::{
    column_span_basis, hermite_normal_form, kernel_basis, rank, smith_invariants, smith_normal_form, solve,
    LatticeSolver,
};
pub use subquotient::{subquotient, subquotient_invariants, Subquotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite of consecutive maps is not zero")]
    CompositionNotZero,
    #[error("matrix does not respect the relations of the source group")]
    NotWellDefined,
    #[error("homomorphism is not invertible")]
    NotInvertible,
}
