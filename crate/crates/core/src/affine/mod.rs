//! Simple Lie algebra data, affine modules at positive integral level, the
//! Sugawara scalars, the Whitehead inner-derivation solver, and the twisted
//! Casimir element of grade 1.

mod lie;
mod module;

pub use lie::{casimir_eigenvalue, whitehead_solve, GModule, Root, SimpleLieAlgebra};
pub use module::{sugawara_lowest_weight, AffineModule};
