use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harmonics::TorusSum;
use crate::restriction::{log_log_fit, lp_from_values, Verdict};

use super::lattice::{random_eigenfunction, representations};

/// Grid points per axis required per unit of √N.
pub const GRID_PER_FREQUENCY: f64 = 20.0;

/// Accepted growth of the mean sup norm in √N.
pub const SUP_SLOPE_LIMIT: f64 = 0.15;

/// Prime-square ladder for the sup-norm slope.
pub const DEFAULT_LADDER: [u64; 5] = [25, 169, 625, 4225, 34225];

pub fn torus_grid_floor(n: u64) -> usize {
    (GRID_PER_FREQUENCY * (n as f64).sqrt()).ceil() as usize
}

/// Max |f| and mean |f|² over the uniform M×M grid, plus the argmax.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScan {
    pub max: f64,
    pub argmax: (f64, f64),
    pub mean_sq: f64,
    /// Largest per-row maxima, best first, as (|f|, (x, y)).
    pub candidates: Vec<(f64, (f64, f64))>,
}

/// Row maxima polished by [`sup_norm`].
const CANDIDATES: usize = 16;

/// Evaluates f on the M×M grid one row at a time: for fixed y the row is
/// an inverse FFT of Σ_n c_{m,n} e^{iny} placed at m mod M.
pub fn scan_grid(f: &TorusSum, m: usize) -> Result<GridScan> {
    let radius = (f.radius_sq() as f64).sqrt();
    if (m as f64) <= 2.0 * radius {
        return Err(Error::UnderResolved {
            what: "torus grid (aliasing)",
            required: (2.0 * radius).floor() as usize + 1,
            given: m,
        });
    }
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(m);
    let rows: Vec<(f64, usize, f64)> = (0..m)
        .into_par_iter()
        .map_init(
            || (vec![Complex64::new(0.0, 0.0); m], vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()]),
            |(buf, scratch), j| {
                buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                let y = TAU * j as f64 / m as f64;
                for t in f.terms() {
                    let k = t.m.rem_euclid(m as i64) as usize;
                    buf[k] += t.coefficient * Complex64::cis(t.n as f64 * y);
                }
                fft.process_with_scratch(buf, scratch);
                let mut best = (0.0, 0);
                let mut sq = 0.0;
                for (i, z) in buf.iter().enumerate() {
                    let a = z.norm_sqr();
                    sq += a;
                    if a > best.0 {
                        best = (a, i);
                    }
                }
                (best.0, best.1, sq)
            },
        )
        .collect();
    let h = TAU / m as f64;
    let mut candidates: Vec<(f64, (f64, f64))> = rows
        .iter()
        .enumerate()
        .map(|(j, &(a, i, _))| (a.sqrt(), (i as f64 * h, j as f64 * h)))
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(CANDIDATES);
    Ok(GridScan {
        max: candidates[0].0,
        argmax: candidates[0].1,
        mean_sq: rows.iter().map(|r| r.2).sum::<f64>() / (m * m) as f64,
        candidates,
    })
}

/// Local maximization of |f| by compass search.
fn polish(f: &TorusSum, start: (f64, f64), step: f64) -> f64 {
    let g = |p: (f64, f64)| f.eval(p.0, p.1).norm_sqr();
    let (mut p, mut best, mut h) = (start, g(start), step);
    while h > 1e-13 {
        let mut moved = false;
        for d in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let q = (p.0 + d.0, p.1 + d.1);
            let v = g(q);
            if v > best {
                best = v;
                p = q;
                moved = true;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    best.sqrt()
}

/// sup |f| from grids of size M and 2M, the best row maxima of each
/// polished locally; the two
/// must agree to 1e-6 relative. Requires M ≥ 20√N.
pub fn sup_norm(f: &TorusSum, m: usize) -> Result<f64> {
    let required = torus_grid_floor(f.radius_sq());
    if m < required {
        return Err(Error::UnderResolved {
            what: "torus grid",
            required,
            given: m,
        });
    }
    let coarse = scan_grid(f, m)?;
    let fine = scan_grid(f, 2 * m)?;
    let best = |s: &GridScan, step: f64| {
        s.candidates
            .iter()
            .map(|c| polish(f, c.1, step))
            .fold(s.max, f64::max)
    };
    let a = best(&coarse, TAU / m as f64);
    let b = best(&fine, TAU / (2 * m) as f64);
    if (a - b).abs() > 1e-6 * b {
        return Err(Error::Numerical(format!(
            "torus sup not converged under grid doubling: {a} vs {b}"
        )));
    }
    Ok(a.max(b))
}

/// Closed curves on T² = (ℝ/2πℤ)².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusCurve {
    /// s ↦ (q s, p s), s ∈ [0, 2π]: the closed geodesic of slope p/q.
    Line { p: i64, q: i64 },
    Circle { center: (f64, f64), radius: f64 },
}

impl TorusCurve {
    /// Slopes 0, 1, 1/2 and a unit circle.
    pub fn defaults() -> [TorusCurve; 4] {
        [
            TorusCurve::Line { p: 0, q: 1 },
            TorusCurve::Line { p: 1, q: 1 },
            TorusCurve::Line { p: 1, q: 2 },
            TorusCurve::Circle {
                center: (std::f64::consts::PI, std::f64::consts::PI),
                radius: 1.0,
            },
        ]
    }

    fn point(&self, s: f64) -> (f64, f64) {
        match *self {
            TorusCurve::Line { p, q } => (q as f64 * s, p as f64 * s),
            TorusCurve::Circle { center, radius } => {
                (center.0 + radius * s.cos(), center.1 + radius * s.sin())
            }
        }
    }

    /// Largest frequency of f∘γ in s, up to a constant.
    fn bandwidth(&self, lambda: f64) -> f64 {
        match *self {
            TorusCurve::Line { p, q } => lambda * ((p * p + q * q) as f64).sqrt(),
            TorusCurve::Circle { radius, .. } => lambda * radius,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            TorusCurve::Line { p, q } if p == 0 && q == 0 => {
                Err(invalid("curve", "line direction (0, 0)"))
            }
            TorusCurve::Circle { radius, .. } if !(radius > 0.0 && radius.is_finite()) => {
                Err(invalid("curve", format!("circle radius {radius}")))
            }
            _ => Ok(()),
        }
    }
}

/// (mean over γ of |f|² ds)^{1/2} by the trapezoid rule in s.
///
/// Lines give trigonometric polynomials in s, integrated exactly once the
/// point count exceeds twice the bandwidth; circles converge
/// exponentially past the bandwidth.
pub fn curve_l2_norm(f: &TorusSum, curve: &TorusCurve) -> Result<f64> {
    curve.validate()?;
    let band = curve.bandwidth(f.eigenvalue());
    let points = 1024usize.max(64 + (8.0 * band).ceil() as usize);
    let values: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|k| {
            let (x, y) = curve.point(TAU * k as f64 / points as f64);
            f.eval(x, y).norm()
        })
        .collect();
    // constant speed in s, so the ds-mean is the s-mean
    let w = vec![1.0 / points as f64; points];
    Ok(lp_from_values(&values, &w, 2.0))
}

/// One (N, seed) of the torus experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusRow {
    pub n: u64,
    pub r2: usize,
    pub seed: u64,
    pub sup: f64,
    /// Largest of `curve_l2_by_curve`.
    pub curve_l2: f64,
    pub curve_l2_by_curve: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusReport {
    pub rows: Vec<TorusRow>,
    pub curves: Vec<TorusCurve>,
    /// Per-N mean of sup over seeds, in ladder order.
    pub mean_sup: Vec<f64>,
    /// Fitted slope of log mean sup against log √N.
    pub slope: Option<f64>,
    pub slope_limit: f64,
    /// Every sup ≤ √r₂(N).
    pub bound_holds: bool,
    pub verdict: Verdict,
}

/// Runs every N against every seed. `grid` overrides the per-N grid
/// (which must still meet 20√N). The slope needs at least two N;
/// otherwise only the Cauchy–Schwarz bound is checked.
pub fn verify_linfty_bound(
    ns: &[u64],
    seeds: &[u64],
    grid: Option<usize>,
    curves: &[TorusCurve],
) -> Result<TorusReport> {
    if ns.is_empty() || seeds.is_empty() {
        return Err(invalid("ns", "need at least one N and one seed"));
    }
    let mut rows = Vec::with_capacity(ns.len() * seeds.len());
    let mut mean_sup = Vec::with_capacity(ns.len());
    for &n in ns {
        if n == 0 {
            return Err(invalid("ns", "N must be positive"));
        }
        let r2 = representations(n).r2();
        let m = grid.unwrap_or_else(|| torus_grid_floor(n));
        let mut total = 0.0;
        for &seed in seeds {
            let f = random_eigenfunction(n, seed)?;
            let sup = sup_norm(&f, m)?;
            let by_curve = curves
                .iter()
                .map(|c| curve_l2_norm(&f, c))
                .collect::<Result<Vec<_>>>()?;
            total += sup;
            rows.push(TorusRow {
                n,
                r2,
                seed,
                sup,
                curve_l2: by_curve.iter().copied().fold(0.0, f64::max),
                curve_l2_by_curve: by_curve,
            });
        }
        mean_sup.push(total / seeds.len() as f64);
    }
    let bound_holds = rows
        .iter()
        .all(|r| r.sup <= (r.r2 as f64).sqrt() * (1.0 + 1e-12));
    let slope = if ns.len() >= 2 {
        let x: Vec<f64> = ns.iter().map(|&n| (n as f64).sqrt()).collect();
        Some(log_log_fit(&x, &mean_sup)?.0)
    } else {
        None
    };
    let verdict = Verdict::from_check(bound_holds && slope.is_none_or(|s| s <= SUP_SLOPE_LIMIT));
    Ok(TorusReport {
        rows,
        curves: curves.to_vec(),
        mean_sup,
        slope,
        slope_limit: SUP_SLOPE_LIMIT,
        bound_holds,
        verdict,
    })
}
