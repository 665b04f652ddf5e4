//! Recurrences and log-space normalization constants.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

/// |S^d| = 2π^{(d+1)/2} / Γ((d+1)/2).
pub fn sphere_area(d: usize) -> f64 {
    let a = (d as f64 + 1.0) / 2.0;
    (2.0_f64.ln() + a * PI.ln() - ln_gamma(a)).exp()
}

/// Gegenbauer C_n^α(t) by the forward three-term recurrence.
///
/// Stable on [−1, 1] for α > 0; α = 1/2 gives Legendre, α = 1 Chebyshev U.
pub fn gegenbauer(n: usize, alpha: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut c0 = 1.0;
    let mut c1 = 2.0 * alpha * t;
    for k in 2..=n {
        let kf = k as f64;
        let c2 = (2.0 * t * (kf + alpha - 1.0) * c1 - (kf + 2.0 * alpha - 2.0) * c0) / kf;
        c0 = c1;
        c1 = c2;
    }
    c1
}

/// ln of ‖C_n^α(⟨·, pole⟩)‖²_{L²(S^d)} with α = (d−1)/2.
///
/// Equals ln(|S^{d−1}| · π 2^{1−2α} Γ(n+2α) / (n! (n+α) Γ(α)²)).
pub fn ln_zonal_norm_sq(d: usize, n: usize) -> f64 {
    let alpha = (d as f64 - 1.0) / 2.0;
    let nf = n as f64;
    sphere_area(d - 1).ln() + PI.ln() + (1.0 - 2.0 * alpha) * 2.0_f64.ln()
        + ln_gamma(nf + 2.0 * alpha)
        - ln_gamma(nf + 1.0)
        - (nf + alpha).ln()
        - 2.0 * ln_gamma(alpha)
}

/// ln ∫_{S^d} |x₁ + i x₂|^{2n} dA = ln(|S^d| · n! Γ((d+1)/2) / Γ(n + (d+1)/2)).
pub fn ln_highest_weight_norm_sq(d: usize, n: usize) -> f64 {
    let a = (d as f64 + 1.0) / 2.0;
    let nf = n as f64;
    sphere_area(d).ln() + ln_gamma(nf + 1.0) + ln_gamma(a) - ln_gamma(nf + a)
}

/// ln P̄_m^m(t) for the L²(S²)-normalized associated Legendre function, with
/// s = √(1 − t²) > 0. P̄_m^m = √((2m+1)/4π · (2m)!/(4^m (m!)²)) · s^m.
fn ln_sectoral(m: usize, s: f64) -> f64 {
    let mf = m as f64;
    0.5 * ((2.0 * mf + 1.0) / (4.0 * PI)).ln()
        + 0.5 * (ln_gamma(2.0 * mf + 1.0) - mf * 4.0_f64.ln() - 2.0 * ln_gamma(mf + 1.0))
        + mf * s.ln()
}

const RESCALE: f64 = 1e250;

/// Fully normalized associated Legendre P̄_n^m(t), so that
/// P̄_n^m(cos θ)·e^{imφ} has unit L²(S²) norm (no Condon–Shortley phase).
///
/// The sectoral seed is formed in log space and the degree recurrence runs
/// on a rescaled mantissa, so nothing overflows or underflows prematurely
/// for n, m up to several thousand.
pub fn normalized_assoc_legendre(n: usize, m: usize, t: f64) -> f64 {
    debug_assert!(m <= n);
    let s = (1.0 - t * t).max(0.0).sqrt();
    if m > 0 && s == 0.0 {
        return 0.0;
    }
    let ln_seed = if m == 0 {
        0.5 * (1.0 / (4.0 * PI)).ln()
    } else {
        ln_sectoral(m, s)
    };
    // mantissa recurrence: value = mantissa · exp(ln_scale)
    let mut ln_scale = ln_seed;
    let mut p_prev = 0.0;
    let mut p_cur = 1.0;
    let mf = m as f64;
    for k in (m + 1)..=n {
        let kf = k as f64;
        let a = ((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf)).sqrt();
        let b = if k == m + 1 {
            0.0
        } else {
            let km = kf - 1.0;
            ((km * km - mf * mf) / (4.0 * km * km - 1.0)).sqrt()
        };
        let p_next = a * (t * p_cur - b * p_prev);
        p_prev = p_cur;
        p_cur = p_next;
        if p_cur.abs() > RESCALE {
            p_cur /= RESCALE;
            p_prev /= RESCALE;
            ln_scale += RESCALE.ln();
        }
    }
    if p_cur == 0.0 {
        return 0.0;
    }
    p_cur.signum() * (p_cur.abs().ln() + ln_scale).exp()
}

/// P̄_n^m(t) for every m in 0..=n (index m).
pub fn normalized_assoc_legendre_orders(n: usize, t: f64) -> Vec<f64> {
    (0..=n).map(|m| normalized_assoc_legendre(n, m, t)).collect()
}
