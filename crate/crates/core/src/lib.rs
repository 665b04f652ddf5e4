//! Restriction norms of Laplace–Beltrami eigenfunctions on spheres and the
//! flat torus, with exponent fits and numerical checks of the oscillatory
//! integrals behind the upper bounds.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod harmonics;
pub mod oscillatory;
pub mod restriction;
pub mod torus;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
