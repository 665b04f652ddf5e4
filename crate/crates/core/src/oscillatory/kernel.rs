use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{distance_unchecked, exp_unchecked, tangent_frame, CurveSpec, UnitVector};
use crate::harmonics::Bump;
use crate::restriction::Verdict;

/// Default geodesic polar radius r.
pub const DEFAULT_RADIUS: f64 = 0.4;
/// Default radius of the amplitude patch around the center point.
pub const DEFAULT_PATCH: f64 = 0.35;

/// The S¹ kernel
/// K(t, τ) = ∫ e^{iλ[ψ_r(γ(t), ω) − ψ_r(γ(τ), ω)]} a(γ(t)) a(γ(τ)) dω
/// with ψ_r(x, ω) = −d(x, exp_{x₀}(rω)), x₀ = γ(center), and the amplitude
/// a(x) = e·exp(−1/(1 − (d(x, x₀)/ρ)²)) ∈ [0, 1] supported in the geodesic
/// ball of radius ρ = `patch`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub curve: CurveSpec,
    /// Arc length of the patch center x₀ on the curve.
    pub center: f64,
    pub r: f64,
    pub patch: f64,
    pub lambda: f64,
}

impl KernelSpec {
    pub fn new(curve: CurveSpec, lambda: f64) -> Self {
        Self {
            curve,
            center: 0.0,
            r: DEFAULT_RADIUS,
            patch: DEFAULT_PATCH,
            lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r < PI / 2.0) {
            return Err(invalid("r", format!("{} not in (0, π/2)", self.r)));
        }
        if !(self.patch > 0.0 && self.patch < self.r) {
            return Err(invalid("patch", format!("{} not in (0, r)", self.patch)));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(invalid("lambda", format!("{} must be finite and ≥ 0", self.lambda)));
        }
        Ok(())
    }

    pub fn base_point(&self) -> UnitVector {
        self.curve.point(self.center)
    }

    /// Amplitude a(x) ∈ [0, 1].
    pub fn amplitude(&self, x: &UnitVector) -> f64 {
        Bump::Standard.raw(distance_unchecked(x, &self.base_point()) / self.patch) * std::f64::consts::E
    }
}

/// Trapezoid size floor: 64 + ⌈20·λ·(phase range)/2π⌉ with phase range
/// 2·d(x, x′).
pub fn kernel_points_floor(lambda: f64, separation: f64) -> usize {
    64 + (20.0 * lambda * 2.0 * separation / (2.0 * PI)).ceil() as usize
}

/// Precomputed circle {exp_{x₀}(rω)} for one quadrature size.
#[derive(Debug, Clone)]
pub struct KernelEvaluator {
    spec: KernelSpec,
    circle: Vec<UnitVector>,
}

impl KernelEvaluator {
    pub fn new(spec: KernelSpec, points: usize) -> Result<Self> {
        spec.validate()?;
        if points < 4 {
            return Err(invalid("points", format!("{points} < 4")));
        }
        let x0 = spec.base_point();
        let frame = tangent_frame(&x0);
        let circle = (0..points)
            .map(|j| {
                let w = 2.0 * PI * j as f64 / points as f64;
                let (s, c) = w.sin_cos();
                let v: Vec<f64> = (0..x0.ambient())
                    .map(|i| spec.r * (c * frame[0][i] + s * frame[1][i]))
                    .collect();
                exp_unchecked(&x0, &v)
            })
            .collect();
        Ok(Self { spec, circle })
    }

    pub fn points(&self) -> usize {
        self.circle.len()
    }

    /// K(t, τ); errors if the circle is too coarse for this pair.
    pub fn eval(&self, t: f64, tau: f64) -> Result<Complex64> {
        let x = self.spec.curve.point(t);
        let xp = self.spec.curve.point(tau);
        let sep = distance_unchecked(&x, &xp);
        let required = kernel_points_floor(self.spec.lambda, sep);
        if self.circle.len() < required {
            return Err(Error::UnderResolved {
                what: "kernel circle quadrature",
                required,
                given: self.circle.len(),
            });
        }
        let amp = self.spec.amplitude(&x) * self.spec.amplitude(&xp);
        if amp == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lam = self.spec.lambda;
        // ψ_r(x, ω) − ψ_r(x′, ω) = d(x′, y) − d(x, y)
        let s: Complex64 = self
            .circle
            .iter()
            .map(|y| Complex64::cis(lam * (distance_unchecked(&xp, y) - distance_unchecked(&x, y))))
            .sum();
        Ok(s * (amp * 2.0 * PI / self.circle.len() as f64))
    }
}

/// One-off evaluation of K(t, τ) with an M-point circle.
pub fn kernel_k(spec: &KernelSpec, t: f64, tau: f64, points: usize) -> Result<Complex64> {
    KernelEvaluator::new(*spec, points)?.eval(t, tau)
}

/// Per-λ suprema of |K|·(1 + λ|t − τ|)^{1/2}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelBoundReport {
    pub lambdas: Vec<f64>,
    pub sup_scaled: Vec<f64>,
    /// sup_scaled[k+1] / sup_scaled[k].
    pub ratios: Vec<f64>,
    pub verdict: Verdict,
}

/// Sweeps a `grid`×`grid` lattice of (t, τ) covering the patch, skipping
/// |t − τ| < 2/λ, at each λ. Pass iff all successive ratios lie in
/// [0.5, 1.5]; a single λ gives no contract.
pub fn verify_kernel_bound(base: &KernelSpec, lambdas: &[f64], grid: usize) -> Result<KernelBoundReport> {
    if lambdas.is_empty() {
        return Err(invalid("lambdas", "empty list"));
    }
    if grid < 2 {
        return Err(invalid("grid", format!("{grid} < 2")));
    }
    let half = base.patch * 1.0001;
    let nodes: Vec<f64> = (0..grid)
        .map(|k| base.center - half + 2.0 * half * k as f64 / (grid - 1) as f64)
        .collect();
    let mut sup_scaled = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let spec = KernelSpec { lambda: lam, ..*base };
        // widest separation in the patch is 2ρ
        let ev = KernelEvaluator::new(spec, kernel_points_floor(lam, 2.0 * half))?;
        let pairs: Vec<(f64, f64)> = nodes
            .iter()
            .flat_map(|&t| nodes.iter().map(move |&tau| (t, tau)))
            .filter(|(t, tau)| (t - tau).abs() >= 2.0 / lam)
            .collect();
        if pairs.is_empty() {
            return Err(invalid("grid", "no admissible (t, τ) pairs"));
        }
        let values: Vec<f64> = pairs
            .par_iter()
            .map(|&(t, tau)| {
                ev.eval(t, tau)
                    .map(|k| k.norm() * (1.0 + lam * (t - tau).abs()).sqrt())
            })
            .collect::<Result<_>>()?;
        sup_scaled.push(values.into_iter().fold(0.0, f64::max));
    }
    let ratios: Vec<f64> = sup_scaled.windows(2).map(|w| w[1] / w[0]).collect();
    let verdict = if ratios.is_empty() {
        Verdict::NoContract
    } else {
        Verdict::from_check(ratios.iter().all(|r| (0.5..=1.5).contains(r)))
    };
    Ok(KernelBoundReport {
        lambdas: lambdas.to_vec(),
        sup_scaled,
        ratios,
        verdict,
    })
}
