use serde::{Deserialize, Serialize};

use super::NormSample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NoContract,
}

impl Verdict {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Least-squares line through (log λ, log ratio).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual in log space.
    pub residual: f64,
    pub theoretical: Option<f64>,
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
}

/// Ordinary least squares y ≈ a·x + b; returns (a, b, rms residual).
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len() as f64;
    if x.len() < 2 {
        return Err(Error::DegenerateFit("fewer than two points".into()));
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit("abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum();
    Ok((slope, intercept, (rss / n).sqrt()))
}

/// Power-law fit y ≈ C·x^a on positive data; returns (a, ln C, rms).
pub fn log_log_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if let Some(bad) = x.iter().chain(y).find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateFit(format!("non-positive value {bad} in log-log fit")));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Fits log(ratio) against log(λ). The verdict is pass iff
/// |slope − theoretical| ≤ tolerance; without both it is no-contract.
pub fn fit_exponent(
    samples: &[NormSample],
    theoretical: Option<f64>,
    tolerance: Option<f64>,
) -> Result<ExponentFit> {
    if samples.len() < 4 {
        return Err(Error::DegenerateFit(format!(
            "{} samples; at least 4 required",
            samples.len()
        )));
    }
    let lam: Vec<f64> = samples.iter().map(|s| s.lambda).collect();
    let ratio: Vec<f64> = samples.iter().map(|s| s.ratio).collect();
    let (slope, intercept, residual) = log_log_fit(&lam, &ratio)?;
    let verdict = match (theoretical, tolerance) {
        (Some(t), Some(tol)) => Verdict::from_check((slope - t).abs() <= tol),
        _ => Verdict::NoContract,
    };
    Ok(ExponentFit {
        slope,
        intercept,
        residual,
        theoretical,
        tolerance,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth(f: impl Fn(f64) -> f64) -> Vec<NormSample> {
        [16.0, 32.0, 64.0, 128.0, 256.0]
            .iter()
            .map(|&l| NormSample {
                n: l as usize,
                lambda: l,
                p: 2.0,
                restricted_norm: f(l),
                ambient_norm: 1.0,
                ratio: f(l),
            })
            .collect()
    }

    #[test]
    fn exact_power_laws() {
        let fit = fit_exponent(&synth(|l| l.powf(0.25)), Some(0.25), Some(0.02)).unwrap();
        assert!((fit.slope - 0.25).abs() < 1e-14);
        assert!(fit.residual < 1e-14);
        assert_eq!(fit.verdict, Verdict::Pass);
        let fit = fit_exponent(&synth(|l| 3.0 * l.sqrt()), None, None).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-14);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-13);
        assert_eq!(fit.verdict, Verdict::NoContract);
        let fit = fit_exponent(&synth(|l| l), Some(0.25), Some(0.02)).unwrap();
        assert_eq!(fit.verdict, Verdict::Fail);
    }

    #[test]
    fn rejects_degenerate_input() {
        let mut s = synth(|l| l);
        s[2].ratio = 0.0;
        assert!(fit_exponent(&s, None, None).is_err());
        assert!(fit_exponent(&synth(|l| l)[..3], None, None).is_err());
        assert!(linear_fit(&[1.0, 1.0], &[2.0, 3.0]).is_err());
    }
}
