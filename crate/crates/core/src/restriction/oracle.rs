use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Growth exponent of the restriction bound, with a flag for the cases
/// where the sharp bound carries an extra log^{1/2}(λ) factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalExponent {
    pub value: f64,
    pub log_endpoint: bool,
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

fn same_p(p: f64, q: f64) -> bool {
    (p - q).abs() <= 1e-12 * q.abs().max(1.0)
}

/// Sharp exponent of λ in ‖φ_λ‖_{L^p(Σ)} ≲ λ^ρ ‖φ_λ‖_{L²(M)} for a
/// k-dimensional submanifold Σ of a d-dimensional manifold M.
///
/// With `curved`, (d, k) must be (2, 1) and the improved exponent for
/// curves of nonvanishing geodesic curvature is returned. `p` may be
/// `f64::INFINITY`.
pub fn theoretical_exponent(d: usize, k: usize, p: f64, curved: bool) -> Result<TheoreticalExponent> {
    if d < 2 {
        return Err(invalid("d", format!("{d} < 2")));
    }
    if k < 1 || k >= d {
        return Err(invalid("k", format!("need 1 ≤ k ≤ d−1, got k={k}, d={d}")));
    }
    if p.is_nan() || p < 2.0 {
        return Err(invalid("p", format!("{p} is not in [2, ∞]")));
    }
    if curved && (d, k) != (2, 1) {
        return Err(invalid("curved", "curvature improvement applies to curves on surfaces only"));
    }
    let (df, kf, ip) = (d as f64, k as f64, inv(p));
    let p0 = 2.0 * df / (df - 1.0);
    let log_endpoint = (k == d - 1 && same_p(p, p0)) || (k + 2 == d && same_p(p, 2.0));
    let value = if curved {
        if p <= 4.0 {
            1.0 / 3.0 - ip / 3.0
        } else {
            0.5 - ip
        }
    } else if k == d - 1 {
        if p > p0 || same_p(p, p0) {
            (df - 1.0) / 2.0 - (df - 1.0) * ip
        } else {
            (df - 1.0) / 4.0 - (df - 2.0) * ip / 2.0
        }
    } else if k + 2 == d {
        (df - 1.0) / 2.0 - (df - 2.0) * ip
    } else {
        (df - 1.0) / 2.0 - kf * ip
    };
    Ok(TheoreticalExponent {
        value,
        log_endpoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(d: usize, k: usize, p: f64, c: bool) -> f64 {
        theoretical_exponent(d, k, p, c).unwrap().value
    }

    #[test]
    fn examples() {
        assert!((v(2, 1, 6.0, false) - (0.5 - 1.0 / 6.0)).abs() < 1e-15);
        assert!((v(2, 1, 6.0, true) - (0.5 - 1.0 / 6.0)).abs() < 1e-15);
        assert!((v(2, 1, 2.0, true) - 1.0 / 6.0).abs() < 1e-15);
        assert!((v(3, 2, 2.0, false) - 0.25).abs() < 1e-15);
        assert!((v(3, 2, 4.0, false) - 0.5).abs() < 1e-15);
        assert!((v(2, 1, f64::INFINITY, false) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_the_critical_exponent() {
        for d in 2..8 {
            let df = d as f64;
            let p0 = 2.0 * df / (df - 1.0);
            let lo = (df - 1.0) / 4.0 - (df - 2.0) / (2.0 * p0);
            let hi = (df - 1.0) / 2.0 - (df - 1.0) / p0;
            assert!((lo - hi).abs() < 1e-14);
            assert!((v(d, d - 1, p0, false) - (df - 1.0) / (2.0 * df)).abs() < 1e-14);
        }
        assert!((v(2, 1, 4.0, true) - v(2, 1, 4.0, false)).abs() < 1e-15);
    }

    #[test]
    fn log_endpoints() {
        assert!(theoretical_exponent(3, 2, 3.0, false).unwrap().log_endpoint);
        assert!(theoretical_exponent(3, 1, 2.0, false).unwrap().log_endpoint);
        assert!(theoretical_exponent(2, 1, 4.0, false).unwrap().log_endpoint);
        assert!(!theoretical_exponent(3, 2, 2.0, false).unwrap().log_endpoint);
        assert!(!theoretical_exponent(3, 1, 2.5, false).unwrap().log_endpoint);
        assert!(!theoretical_exponent(5, 1, 2.0, false).unwrap().log_endpoint);
        assert!((v(3, 1, 2.0, false) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn shape_in_p() {
        let mut prev = v(2, 1, 4.0, false);
        for k in 1..100 {
            let p = 4.0 + 0.25 * k as f64;
            let cur = v(2, 1, p, false);
            assert!(cur >= prev);
            prev = cur;
        }
        for k in 0..=20 {
            let p = 2.0 + 0.1 * k as f64;
            assert!((v(2, 1, p, false) - 0.25).abs() < 1e-15);
            if p < 4.0 {
                assert!(v(2, 1, p, true) < v(2, 1, p, false));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(theoretical_exponent(3, 3, 2.0, false).is_err());
        assert!(theoretical_exponent(3, 0, 2.0, false).is_err());
        assert!(theoretical_exponent(2, 1, 1.5, false).is_err());
        assert!(theoretical_exponent(2, 1, f64::NAN, false).is_err());
        assert!(theoretical_exponent(3, 2, 2.0, true).is_err());
    }
}
