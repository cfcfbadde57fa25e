//! Baues-Wirsching cohomology of finite categories with coefficients in
//! natural systems, computed exactly.
//!
//! The crate is layered bottom-up:
//!
//! * [`abelian`]: integer matrices, Smith/Hermite normal forms and finitely
//!   presented abelian groups.
//! * [`fincat`]: finite categories, functors, natural transformations and
//!   composable morphism sequences.
//! * [`factorization`]: the factorization category `FC` and the induced
//!   functors `F(φ)`, `F(α)` and transformations `F(ε, γ)`.
//! * [`natsys`]: natural systems `D: FC → Ab` and morphisms between them.
//! * [`bwcomplex`]: the cochain complex `F*(C, D)`, induced cochain maps,
//!   the homotopies `h`, `r`, `r'`, and cohomology.
//! * [`localization`]: (co)localizations and chain-level verification of the
//!   (co)localization theorems.
//! * [`generate`] and [`laws`]: seeded random instances and the executable law
//!   suites run by the command-line tool.

pub mod abelian;
pub mod bwcomplex;
pub mod factorization;
pub mod fincat;
pub mod generate;
pub mod laws;
pub mod localization;
pub mod natsys;
