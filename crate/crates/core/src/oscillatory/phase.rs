use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{
    distance_unchecked, exp_unchecked, log_map, norm, tangent_frame, CurveSpec, UnitVector,
};

/// ψ_r(x, ω) − ψ_r(x′, ω) with ψ_r(z, ω) = −d(z, exp_{x′}(rω)); ω is a
/// unit tangent vector at x′.
pub fn phase_difference(x: &UnitVector, xp: &UnitVector, r: f64, omega: &[f64]) -> f64 {
    let v: Vec<f64> = omega.iter().map(|w| r * w).collect();
    let y = exp_unchecked(xp, &v);
    distance_unchecked(xp, &y) - distance_unchecked(x, &y)
}

/// The two critical directions of ω ↦ ψ_r(x, ω) − ψ_r(x′, ω).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoints {
    /// Unit tangent at x′ pointing toward x.
    pub omega_star: Vec<f64>,
    pub omega_opposite: Vec<f64>,
    /// Phase at ω*, equal to +d(x, x′).
    pub phase_star: f64,
    /// Phase at ω* + π, equal to −d(x, x′).
    pub phase_opposite: f64,
    pub distance: f64,
}

/// Tolerance for the direct-evaluation check of the critical values.
pub const CRITICAL_VALUE_TOLERANCE: f64 = 1e-10;

/// ω* and ω* + π for 0 < d(x, x′) < r < π/2, with the phase evaluated at
/// both and checked against ±d(x, x′).
pub fn critical_points(x: &UnitVector, xp: &UnitVector, r: f64) -> Result<CriticalPoints> {
    if x.ambient() != xp.ambient() {
        return Err(Error::DimensionMismatch {
            left: x.ambient(),
            right: xp.ambient(),
        });
    }
    let dist = distance_unchecked(x, xp);
    if dist == 0.0 {
        return Err(invalid("x", "critical points are undefined for x = x′"));
    }
    if !(r > dist && r < PI / 2.0) {
        return Err(invalid("r", format!("need d(x, x′) = {dist} < r = {r} < π/2")));
    }
    let v = log_map(xp, x)?;
    let nv = norm(&v);
    let omega_star: Vec<f64> = v.iter().map(|c| c / nv).collect();
    let omega_opposite: Vec<f64> = omega_star.iter().map(|c| -c).collect();
    let phase_star = phase_difference(x, xp, r, &omega_star);
    let phase_opposite = phase_difference(x, xp, r, &omega_opposite);
    if (phase_star - dist).abs() > CRITICAL_VALUE_TOLERANCE
        || (phase_opposite + dist).abs() > CRITICAL_VALUE_TOLERANCE
    {
        return Err(Error::Numerical(format!(
            "critical values {phase_star}, {phase_opposite} differ from ±{dist}"
        )));
    }
    Ok(CriticalPoints {
        omega_star,
        omega_opposite,
        phase_star,
        phase_opposite,
        distance: dist,
    })
}

/// Samples w ↦ phase at ω(w) = cos w·e₀ + sin w·e₁ in the tangent frame
/// at x′; returns (frame, angles, values).
pub fn phase_on_circle(
    x: &UnitVector,
    xp: &UnitVector,
    r: f64,
    points: usize,
) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    let frame = tangent_frame(xp);
    let angles: Vec<f64> = (0..points).map(|j| 2.0 * PI * j as f64 / points as f64).collect();
    let values = angles
        .iter()
        .map(|w| {
            let (s, c) = w.sin_cos();
            let om: Vec<f64> = (0..xp.ambient())
                .map(|i| c * frame[0][i] + s * frame[1][i])
                .collect();
            phase_difference(x, xp, r, &om)
        })
        .collect();
    (frame, angles, values)
}

/// |Φ″_ww| at w = α and w = α + π, where Φ(w) = ⟨σ, ∇_x ψ_r(x₀, ω(w))⟩
/// is the normalized phase at the patch center and σ = (cos α, sin α).
///
/// The gradient of ψ_r(·, ω) at x₀ is the unit vector toward
/// exp_{x₀}(rω), taken from the log map; the w-derivative is a central
/// second difference with step `h`.
pub fn phase_hessian_check(x0: &UnitVector, r: f64, alpha: f64, h: f64) -> Result<(f64, f64)> {
    if !(r > 0.0 && r < PI) {
        return Err(invalid("r", format!("{r} not in (0, π)")));
    }
    let frame = tangent_frame(x0);
    let (sa, ca) = alpha.sin_cos();
    let sigma: Vec<f64> = (0..x0.ambient())
        .map(|i| ca * frame[0][i] + sa * frame[1][i])
        .collect();
    let phi = |w: f64| -> Result<f64> {
        let (s, c) = w.sin_cos();
        let v: Vec<f64> = (0..x0.ambient())
            .map(|i| r * (c * frame[0][i] + s * frame[1][i]))
            .collect();
        let y = exp_unchecked(x0, &v);
        let g = log_map(x0, &y)?;
        let ng = norm(&g);
        Ok(g.iter().zip(&sigma).map(|(a, b)| a * b).sum::<f64>() / ng)
    };
    let second = |w: f64| -> Result<f64> {
        Ok((phi(w + h)? - 2.0 * phi(w)? + phi(w - h)?) / (h * h))
    };
    Ok((second(alpha)?.abs(), second(alpha + PI)?.abs()))
}

/// Default step set for [`phase_expansion_fit`].
pub const DEFAULT_STEPS: [f64; 6] = [0.005, 0.01, 0.02, 0.03, 0.04, 0.05];

/// Fits c(τ) in d(γ(τ+h), γ(τ)) = |h|(1 − c h² + O(h³)).
///
/// For each step h and its negative, y(h) = (|h| − d)/|h|³ is regressed on
/// a cubic in the signed h; the constant term is ĉ.
pub fn phase_expansion_fit(c: &CurveSpec, tau: f64, steps: &[f64]) -> Result<f64> {
    if steps.len() < 4 {
        return Err(Error::DegenerateFit(format!("{} steps; at least 4 required", steps.len())));
    }
    if let Some(h) = steps.iter().find(|h| !(1e-3..=1e-1).contains(*h)) {
        return Err(invalid("steps", format!("step {h} outside [1e-3, 1e-1]")));
    }
    let base = c.point(tau);
    let mut hs = Vec::with_capacity(2 * steps.len());
    let mut ys = Vec::with_capacity(2 * steps.len());
    for &h in steps {
        for hh in [h, -h] {
            let d = distance_unchecked(&c.point(tau + hh), &base);
            hs.push(hh);
            ys.push((h - d) / (h * h * h));
        }
    }
    polynomial_constant_term(&hs, &ys, 3)
}

/// Least-squares polynomial of degree `deg`; returns the constant term.
fn polynomial_constant_term(x: &[f64], y: &[f64], deg: usize) -> Result<f64> {
    use faer::linalg::solvers::SolveLstsq;

    let k = deg + 1;
    if x.len() < k {
        return Err(Error::DegenerateFit("fewer points than coefficients".into()));
    }
    // scaled abscissae keep the Vandermonde matrix well conditioned
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if !(scale > 0.0) {
        return Err(Error::DegenerateFit("all abscissae are zero".into()));
    }
    let a = faer::Mat::<f64>::from_fn(x.len(), k, |i, j| (x[i] / scale).powi(j as i32));
    let b = faer::Mat::<f64>::from_fn(x.len(), 1, |i, _| y[i]);
    let sol = a.qr().solve_lstsq(&b);
    let c0 = sol[(0, 0)];
    if !c0.is_finite() {
        return Err(Error::DegenerateFit("singular design matrix".into()));
    }
    Ok(c0)
}
