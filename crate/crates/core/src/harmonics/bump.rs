//! Smooth compactly supported profiles.

use serde::{Deserialize, Serialize};

/// ∫_{−1}^{1} exp(−1/(1−t²)) dt.
const STANDARD_MASS: f64 = 0.443_993_816_168_079_44;

/// A C^∞ profile supported in (−1, 1) with unit mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Bump {
    /// exp(−1/(1−t²)) rescaled to unit mass.
    #[default]
    Standard,
    /// exp(−1/(1−t²)²) rescaled to unit mass. Steeper flanks,
    /// same support; a second profile for sensitivity checks.
    Steep,
}

impl Bump {
    pub fn value(&self, t: f64) -> f64 {
        if t.abs() >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - t * t;
        match self {
            Bump::Standard => (-1.0 / s).exp() / STANDARD_MASS,
            Bump::Steep => (-1.0 / (s * s)).exp() / STEEP_MASS,
        }
    }

    /// Unnormalized profile, equal to 1/e at t = 0 for [`Bump::Standard`].
    pub fn raw(&self, t: f64) -> f64 {
        match self {
            Bump::Standard => self.value(t) * STANDARD_MASS,
            Bump::Steep => self.value(t) * STEEP_MASS,
        }
    }
}

/// ∫_{−1}^{1} exp(−1/(1−t²)²) dt.
const STEEP_MASS: f64 = 0.340_294_238_275_125_93;

fn smooth_step_kernel(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// C^∞ cutoff χ with χ = 1 on |x| ≤ 1/2 and χ = 0 on |x| ≥ 1.
pub fn smooth_cutoff(x: f64) -> f64 {
    let u = 2.0 * x.abs() - 1.0;
    if u <= 0.0 {
        return 1.0;
    }
    if u >= 1.0 {
        return 0.0;
    }
    let a = smooth_step_kernel(u);
    let b = smooth_step_kernel(1.0 - u);
    b / (a + b)
}
