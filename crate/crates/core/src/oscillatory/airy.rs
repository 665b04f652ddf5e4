use std::f64::consts::PI;
use std::sync::Arc;

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harmonics::smooth_cutoff;
use crate::restriction::{log_log_fit, Verdict};

/// Coefficient function of τ (and h for the correction term).
pub type Coefficient = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Correction = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Default memory cap for the dense kernel matrix (512 MiB).
pub const DEFAULT_MATRIX_CAP: usize = 512 << 20;

/// Kernel
/// K(t, τ) = e^{iλγ(τ, h)} a(h) (λ|h|)^{−1/2} (1 − χ)(λ^{1/3} h),  h = t − τ,
/// with γ(τ, h) = −|h|(1 − c(τ)h² + d(τ, h)h³) and a(h) = χ(|h|/ε), acting
/// on L² of [0, `domain`].
#[derive(Clone)]
pub struct AirySpec {
    pub c: Coefficient,
    pub d: Correction,
    pub lambda: f64,
    pub epsilon: f64,
    pub domain: f64,
    /// Multiplies the amplitude; 0 gives the zero operator.
    pub amplitude_scale: f64,
}

impl std::fmt::Debug for AirySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AirySpec")
            .field("lambda", &self.lambda)
            .field("epsilon", &self.epsilon)
            .field("domain", &self.domain)
            .field("amplitude_scale", &self.amplitude_scale)
            .finish_non_exhaustive()
    }
}

/// Named coefficient choices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryCase {
    /// c ≡ 1, d ≡ 0.
    Model,
    /// c(τ) = 1 + 0.2 sin τ, d(τ, h) = 0.1 cos τ.
    Variable,
}

/// Default support scale ε and interval length.
pub const DEFAULT_EPSILON: f64 = 1.0;
pub const DEFAULT_DOMAIN: f64 = 1.0;

impl AirySpec {
    pub fn case(case: AiryCase, lambda: f64) -> Self {
        let (c, d): (Coefficient, Correction) = match case {
            AiryCase::Model => (Arc::new(|_| 1.0), Arc::new(|_, _| 0.0)),
            AiryCase::Variable => (
                Arc::new(|tau: f64| 1.0 + 0.2 * tau.sin()),
                Arc::new(|tau: f64, _h: f64| 0.1 * tau.cos()),
            ),
        };
        Self {
            c,
            d,
            lambda,
            epsilon: DEFAULT_EPSILON,
            domain: DEFAULT_DOMAIN,
            amplitude_scale: 1.0,
        }
    }

    /// Largest admissible step, (2π/λ)/20.
    pub fn max_step(&self) -> f64 {
        2.0 * PI / self.lambda / 20.0
    }

    fn kernel(&self, t: f64, tau: f64) -> c64 {
        let h = t - tau;
        let ah = h.abs();
        let cut = 1.0 - smooth_cutoff(self.lambda.cbrt() * h);
        let amp = self.amplitude_scale * smooth_cutoff(ah / self.epsilon);
        if cut == 0.0 || amp == 0.0 {
            return c64::new(0.0, 0.0);
        }
        let gamma = -ah * (1.0 - (self.c)(tau) * h * h + (self.d)(tau, h) * h * h * h);
        let mag = amp * cut / (self.lambda * ah).sqrt();
        let (s, co) = (self.lambda * gamma).sin_cos();
        c64::new(mag * co, mag * s)
    }
}

/// Largest singular value of the step-weighted kernel matrix on the grid
/// τ_j = j·step, j = 0..⌊domain/step⌋.
pub fn airy_operator_norm(spec: &AirySpec, step: f64) -> Result<f64> {
    airy_operator_norm_capped(spec, step, DEFAULT_MATRIX_CAP)
}

pub fn airy_operator_norm_capped(spec: &AirySpec, step: f64, cap: usize) -> Result<f64> {
    if !(spec.lambda > 0.0) {
        return Err(invalid("lambda", "must be positive"));
    }
    if !(spec.epsilon > 0.0 && spec.domain > 0.0) {
        return Err(invalid("epsilon", "support and domain must be positive"));
    }
    if !(step > 0.0) || step > spec.max_step() * (1.0 + 1e-12) {
        return Err(invalid(
            "step",
            format!("{step} exceeds (2π/λ)/20 = {}", spec.max_step()),
        ));
    }
    let n = (spec.domain / step).floor() as usize + 1;
    let bytes = n.saturating_mul(n).saturating_mul(std::mem::size_of::<c64>());
    if bytes > cap {
        return Err(Error::MatrixTooLarge { bytes, cap });
    }
    let m = Mat::<c64>::from_fn(n, n, |i, j| {
        let k = spec.kernel(i as f64 * step, j as f64 * step);
        c64::new(k.re * step, k.im * step)
    });
    let s = m
        .singular_values()
        .map_err(|e| Error::Numerical(format!("SVD failed: {e:?}")))?;
    Ok(s.into_iter().fold(0.0, f64::max))
}

/// Operator norms over a λ list and the fitted log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AiryReport {
    pub case: AiryCase,
    pub lambdas: Vec<f64>,
    pub norms: Vec<f64>,
    pub slope: f64,
    pub theoretical: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Expected decay exponent and the accepted deviation.
pub const AIRY_EXPONENT: f64 = -2.0 / 3.0;
pub const AIRY_TOLERANCE: f64 = 0.05;

pub fn airy_sweep(case: AiryCase, lambdas: &[f64]) -> Result<AiryReport> {
    if lambdas.len() < 2 {
        return Err(invalid("lambdas", "need at least two frequencies"));
    }
    let norms = lambdas
        .iter()
        .map(|&l| {
            let spec = AirySpec::case(case, l);
            airy_operator_norm(&spec, spec.max_step())
        })
        .collect::<Result<Vec<_>>>()?;
    let (slope, _, _) = log_log_fit(lambdas, &norms)?;
    Ok(AiryReport {
        case,
        lambdas: lambdas.to_vec(),
        norms,
        slope,
        theoretical: AIRY_EXPONENT,
        tolerance: AIRY_TOLERANCE,
        verdict: Verdict::from_check((slope - AIRY_EXPONENT).abs() <= AIRY_TOLERANCE),
    })
}
