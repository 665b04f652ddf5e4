//! Closed-form Laplace–Beltrami eigenfunctions on S², S³ and the flat torus.
//!
//! Sphere families implement [`SphereFunction`]. All normalizations are
//! exact (log-Gamma closed forms), so grid quadrature of |f|² is a check,
//! not an input.

mod bump;
mod families;
mod special;
mod torus_sum;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::UnitVector;

pub use bump::{smooth_cutoff, Bump};
pub use families::{
    eval_assoc_harmonic, eval_averaged, eval_highest_weight, eval_zonal, AssocHarmonic, Averaged,
    HighestWeight, Zonal,
};
pub use special::{
    gegenbauer, ln_highest_weight_norm_sq, ln_zonal_norm_sq, normalized_assoc_legendre,
    normalized_assoc_legendre_orders, sphere_area,
};
pub use torus_sum::{eval_torus, LatticePoint, TorusSum};

/// A degree-n spherical harmonic on S^d, evaluable pointwise.
///
/// `eval` assumes `x` lives in R^{d+1}; the norm routines check this.
pub trait SphereFunction: Send + Sync {
    fn dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn eval(&self, x: &UnitVector) -> Complex64;

    fn eigenvalue(&self) -> f64 {
        eigenvalue(self.dim(), self.degree())
    }
}

/// λ = √(n(n+d−1)), so that −Δφ = λ²φ.
pub fn eigenvalue(d: usize, n: usize) -> f64 {
    let n = n as f64;
    (n * (n + d as f64 - 1.0)).sqrt()
}

/// Serializable description of one sphere eigenfunction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HarmonicSpec {
    Zonal { d: usize, n: usize, pole: Vec<f64> },
    AssocLegendre { n: usize, m: i64 },
    HighestWeight { d: usize, n: usize },
    Averaged {
        n: usize,
        delta: f64,
        #[serde(default)]
        bump: Bump,
    },
}

impl HarmonicSpec {
    pub fn degree(&self) -> usize {
        match *self {
            HarmonicSpec::Zonal { n, .. }
            | HarmonicSpec::AssocLegendre { n, .. }
            | HarmonicSpec::HighestWeight { n, .. }
            | HarmonicSpec::Averaged { n, .. } => n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            HarmonicSpec::Zonal { d, .. } | HarmonicSpec::HighestWeight { d, .. } => d,
            HarmonicSpec::AssocLegendre { .. } | HarmonicSpec::Averaged { .. } => 2,
        }
    }

    /// The same family member at another degree. Associated harmonics keep
    /// the ratio m/n, rounded.
    pub fn with_degree(&self, n: usize) -> Self {
        let mut s = self.clone();
        match &mut s {
            HarmonicSpec::AssocLegendre { n: old, m } => {
                let ratio = if *old == 0 { 0.0 } else { *m as f64 / *old as f64 };
                *m = (ratio * n as f64).round() as i64;
                *old = n;
            }
            HarmonicSpec::Zonal { n: old, .. }
            | HarmonicSpec::HighestWeight { n: old, .. }
            | HarmonicSpec::Averaged { n: old, .. } => *old = n,
        }
        s
    }

    pub fn build(&self) -> Result<Box<dyn SphereFunction>> {
        Ok(match self {
            HarmonicSpec::Zonal { d, n, pole } => {
                if pole.len() != d + 1 {
                    return Err(Error::DimensionMismatch {
                        left: d + 1,
                        right: pole.len(),
                    });
                }
                let p = UnitVector::normalized(pole)
                    .map_err(|_| invalid("pole", "pole must be a nonzero vector"))?;
                Box::new(Zonal::new(*d, *n, p)?)
            }
            HarmonicSpec::AssocLegendre { n, m } => Box::new(AssocHarmonic::new(*n, *m)?),
            HarmonicSpec::HighestWeight { d, n } => Box::new(HighestWeight::new(*d, *n)?),
            HarmonicSpec::Averaged { n, delta, bump } => {
                Box::new(Averaged::new(*n, *delta, *bump)?)
            }
        })
    }
}
