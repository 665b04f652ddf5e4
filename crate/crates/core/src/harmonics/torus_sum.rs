use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// One term c·e^{i(mx + ny)} of a torus eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    pub coefficient: Complex64,
}

impl LatticePoint {
    pub fn norm_sq(&self) -> u64 {
        (self.m * self.m + self.n * self.n) as u64
    }
}

/// Σ c_{m,n} e^{i(mx+ny)} over lattice points of one circle m² + n² = N.
///
/// An eigenfunction of the flat torus (R/2πZ)² with λ² = N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusSum {
    radius_sq: u64,
    terms: Vec<LatticePoint>,
}

impl TorusSum {
    pub fn new(terms: Vec<LatticePoint>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| invalid("terms", "empty coefficient list"))?;
        let radius_sq = first.norm_sq();
        if let Some(bad) = terms.iter().find(|t| t.norm_sq() != radius_sq) {
            return Err(invalid(
                "terms",
                format!(
                    "({}, {}) lies on m²+n² = {}, not {radius_sq}",
                    bad.m,
                    bad.n,
                    bad.norm_sq()
                ),
            ));
        }
        Ok(Self { radius_sq, terms })
    }

    /// N = λ².
    pub fn radius_sq(&self) -> u64 {
        self.radius_sq
    }

    pub fn eigenvalue(&self) -> f64 {
        (self.radius_sq as f64).sqrt()
    }

    pub fn terms(&self) -> &[LatticePoint] {
        &self.terms
    }

    /// ‖f‖ in L²(T², dx dy/(2π)²) by Plancherel.
    pub fn l2_norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * Complex64::cis(t.m as f64 * x + t.n as f64 * y))
            .sum()
    }
}

/// Evaluates the exponential sum at (x, y).
pub fn eval_torus(f: &TorusSum, point: (f64, f64)) -> Complex64 {
    f.eval(point.0, point.1)
}
