//! Exact-arithmetic workbench for graded modules over the Virasoro algebra,
//! affine Lie algebras, and lattice vertex algebras, with a solver that
//! certifies first-cohomology statements of the form H^1(V, W) = Z^1(V, W)
//! on concrete truncated instances.
//!
//! Everything is computed over Q or over the fraction field Q(c, h); there is
//! no floating point anywhere. See the README for the CLI surface.

pub mod affine;
pub mod cohomology;
pub mod error;
pub mod instance;
pub mod lattice;
pub mod modes;
pub mod scalars;
pub mod virasoro;
pub mod zhu;

#[cfg(test)]
mod cohomology_tests;

pub use error::{Error, Result};
pub use modes::{BasisKey, GradedModule, Vector};
pub use scalars::{ExactMatrix, MPoly, Rat, RatFunc, Subspace};
