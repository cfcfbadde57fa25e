//! The Baues–Wirsching cochain complex `F*(C, D)` of a finite category with
//! coefficients in a natural system, the maps induced by morphisms of
//! `Nat_F`, and the degree −1 and −2 homotopies attached to 2-morphisms.
//!
//! Degree `n` is the product of `D(σ1⋯σn)` over composable sequences
//! `X_0 ←σ1− X_1 ⋯ ←σn− X_n`, one block per sequence in [`BWBasis`] order.
//! Complexes are truncated at a chosen degree `N`; cohomology is reported
//! for `n < N` and identities are checked wherever both sides are computed.
//!
//! In the homotopy formulas the summands at a target sequence `σ` all live
//! in one group `D(φ(σ) ε_{X_n})` (or its two-step analogue). The correction
//! `D(1, k)` moves that group to `D(F(β)(σ))`, after which the components of
//! the target morphism of systems land in `E(σ)`.

mod basis;
mod blockmap;
mod complex;
mod homotopy;
mod maps;

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::fincat::FinCatError;
use crate::natsys::NatSysError;

pub use basis::BWBasis;
pub use blockmap::{BlockMap, CochainGroup};
pub use complex::CochainComplex;
pub use homotopy::{
    homotopy_class_equal, homotopy_from_dense, homotopy_h, homotopy_h_unchecked, homotopy_r_horizontal,
    homotopy_r_horizontal_unchecked, homotopy_r_vertical, homotopy_r_vertical_unchecked, Homotopy, RelativeHomotopy,
};
pub use maps::{induced_map_2, induced_map_nat, CochainMap};

#[derive(Debug, Error)]
pub enum BWError {
    #[error("degree {degree} is outside the computed range (truncated at {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("d∘d ≠ 0 from degree {degree}: target sequence {row}, source sequence {column}")]
    DifferentialNotNilpotent { degree: usize, row: usize, column: usize },
    #[error("not a cochain map in degree {degree}: target sequence {row}, source sequence {column}")]
    NotAChainMap { degree: usize, row: usize, column: usize },
    #[error(
        "homotopy identity {law} fails at source degree {degree}: target sequence {row}, source sequence {column}"
    )]
    HomotopyIdentity {
        law: &'static str,
        degree: usize,
        row: usize,
        column: usize,
    },
    #[error("{0}")]
    LadderInvalid(String),
    #[error("internal bookkeeping: {0}")]
    Bookkeeping(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    NatSys(#[from] NatSysError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    FinCat(#[from] FinCatError),
}

#[cfg(test)]
mod tests;
