use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{
    build_grid, exp_unchecked, gauss_chebyshev_u, gauss_legendre, neumaier_sum, tangent_frame,
    CurveSpec, GreatSubsphere, GridTarget, QuadratureGrid, UnitVector,
};
use crate::harmonics::{
    gegenbauer, ln_highest_weight_norm_sq, ln_zonal_norm_sq, normalized_assoc_legendre,
    sphere_area, HarmonicSpec, SphereFunction,
};

/// Minimum curve grid size regardless of λ.
pub const CURVE_POINTS_MIN: usize = 4096;

/// Points per wavelength required along curves.
pub const POINTS_PER_WAVELENGTH: f64 = 20.0;

/// Fixed chunk length for parallel reductions; the chunk partials are
/// summed sequentially, so results do not depend on the thread count.
const CHUNK: usize = 4096;

/// max(4096, ⌈20λ⌉).
pub fn curve_points_floor(lambda: f64) -> usize {
    CURVE_POINTS_MIN.max((POINTS_PER_WAVELENGTH * lambda).ceil() as usize)
}

/// Latitude resolution floor for L^p on a great 2-sphere of S³.
///
/// |f|^p has degree p·n for even p; Gauss–Legendre with `res` nodes is
/// exact to degree 2·res − 1. Odd, fractional and infinite p are treated
/// like p = 8.
pub fn subsphere_resolution_floor(n: usize, p: f64) -> usize {
    let pe = if p.is_finite() { p.min(8.0) } else { 8.0 };
    64usize.max((pe * n as f64 / 2.0).ceil() as usize + 16)
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 2.0 {
        return Err(invalid("p", format!("{p} is not in [2, ∞]")));
    }
    Ok(())
}

fn check_dim(f: &dyn SphereFunction, d: usize) -> Result<()> {
    if f.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: f.dim(),
        });
    }
    Ok(())
}

/// (Σ w_i |v_i|^p)^{1/p}, or max |v_i| for p = ∞, scaled by the max to
/// keep large p finite.
pub fn lp_from_values(values: &[f64], weights: &[f64], p: f64) -> f64 {
    let m = values.iter().copied().fold(0.0, f64::max);
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    let partial: Vec<f64> = values
        .par_chunks(CHUNK)
        .zip(weights.par_chunks(CHUNK))
        .map(|(v, w)| neumaier_sum(v.iter().zip(w).map(|(a, b)| b * (a / m).powf(p))))
        .collect();
    m * neumaier_sum(partial).powf(1.0 / p)
}

fn moduli(f: &dyn SphereFunction, nodes: &[UnitVector]) -> Vec<f64> {
    nodes.par_iter().map(|x| f.eval(x).norm()).collect()
}

/// ‖f|_γ‖_{L^p(γ, ds)} on a uniform arc-length grid of `points` nodes.
///
/// Requires `points` ≥ max(4096, 20λ). For p = ∞ the grid maximum is
/// polished by a golden-section search between its neighbours.
pub fn lp_norm_on_curve(f: &dyn SphereFunction, c: &CurveSpec, p: f64, points: usize) -> Result<f64> {
    check_p(p)?;
    check_dim(f, 2)?;
    let required = curve_points_floor(f.eigenvalue());
    if points < required {
        return Err(Error::UnderResolved {
            what: "curve grid",
            required,
            given: points,
        });
    }
    let grid = build_grid(GridTarget::Curve {
        curve: *c,
        points,
    })?;
    let values = moduli(f, &grid.nodes);
    if p.is_infinite() {
        let h = c.length() / points as f64;
        let (imax, vmax) = argmax(&values);
        let s0 = imax as f64 * h;
        let g = |s: f64| f.eval(&c.point(s)).norm();
        return Ok(vmax.max(golden_max(&g, s0 - h, s0 + h)));
    }
    Ok(lp_from_values(&values, &grid.weights, p))
}

fn argmax(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, v)| if v > b.1 { (i, v) } else { b })
}

fn golden_max(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = g(x1);
        }
    }
    f1.max(f2)
}

/// ‖f|_Σ‖_{L^p(Σ)} for Σ a great 2-sphere of S³ and f on S³.
///
/// Product Gauss–Legendre × trapezoid grid with `resolution` latitude
/// nodes, at least [`subsphere_resolution_floor`]. For p = ∞ the grid
/// maximum is polished by a shrinking compass search.
pub fn lp_norm_on_subsphere(
    f: &dyn SphereFunction,
    s: &GreatSubsphere,
    p: f64,
    resolution: usize,
) -> Result<f64> {
    check_p(p)?;
    check_dim(f, 3)?;
    let required = subsphere_resolution_floor(f.degree(), p);
    if resolution < required {
        return Err(Error::UnderResolved {
            what: "subsphere grid",
            required,
            given: resolution,
        });
    }
    let grid = build_grid(GridTarget::Subsphere {
        subsphere: *s,
        resolution,
    })?;
    let values = moduli(f, &grid.nodes);
    if p.is_infinite() {
        let (imax, vmax) = argmax(&values);
        let polished = compass_max(f, s, &grid.nodes[imax], std::f64::consts::PI / resolution as f64);
        return Ok(vmax.max(polished));
    }
    Ok(lp_from_values(&values, &grid.weights, p))
}

/// Pattern search for max |f| on the subsphere near `start`.
fn compass_max(f: &dyn SphereFunction, s: &GreatSubsphere, start: &UnitVector, step: f64) -> f64 {
    // work in the model S² so moves stay on the subsphere
    let frame = s.frame();
    let to_model = |x: &UnitVector| {
        let c = x.coords();
        let y: Vec<f64> = frame
            .iter()
            .map(|e| e.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect();
        UnitVector::normalized(&y).expect("subsphere point")
    };
    let eval = |y: &UnitVector| {
        let c = y.coords();
        f.eval(&s.embed(&[c[0], c[1], c[2]])).norm()
    };
    let mut y = to_model(start);
    let mut best = eval(&y);
    let mut h = step;
    while h > 1e-12 {
        let tf = tangent_frame(&y);
        let mut moved = false;
        for e in &tf {
            for sign in [-1.0, 1.0] {
                let v: Vec<f64> = e.iter().map(|c| sign * h * c).collect();
                let cand = exp_unchecked(&y, &v);
                let val = eval(&cand);
                if val > best {
                    best = val;
                    y = cand;
                    moved = true;
                }
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    best
}

/// Quadrature L² norm of f over the grid.
pub fn l2_norm_on_manifold(f: &dyn SphereFunction, grid: &QuadratureGrid) -> Result<f64> {
    if let Some(x) = grid.nodes.first() {
        if x.ambient() != f.dim() + 1 {
            return Err(Error::DimensionMismatch {
                left: f.dim() + 1,
                right: x.ambient(),
            });
        }
    }
    let values = moduli(f, &grid.nodes);
    Ok(lp_from_values(&values, &grid.weights, 2.0))
}

/// L²(S^d) norm of a family member.
///
/// Zonal, associated and highest-weight members have |f| depending on one
/// variable, so a one-dimensional Gauss rule that is exact for the
/// polynomial |f|² replaces the full sphere grid. Averaged harmonics use
/// the S² grid at resolution 2n + 16.
pub fn ambient_l2_norm(spec: &HarmonicSpec) -> Result<f64> {
    let f = spec.build()?;
    let n = spec.degree();
    let q = n + 16;
    let sq = match spec {
        HarmonicSpec::Zonal { d, .. } => {
            let alpha = (*d as f64 - 1.0) / 2.0;
            let scale = (-ln_zonal_norm_sq(*d, n)).exp();
            let (t, w) = if *d == 2 {
                gauss_legendre(q)
            } else {
                gauss_chebyshev_u(q)
            };
            sphere_area(*d - 1)
                * neumaier_sum(
                    t.iter()
                        .zip(&w)
                        .map(|(t, w)| w * scale * gegenbauer(n, alpha, *t).powi(2)),
                )
        }
        HarmonicSpec::AssocLegendre { m, .. } => {
            let (t, w) = gauss_legendre(q);
            let am = m.unsigned_abs() as usize;
            2.0 * std::f64::consts::PI
                * neumaier_sum(
                    t.iter()
                        .zip(&w)
                        .map(|(t, w)| w * normalized_assoc_legendre(n, am, *t).powi(2)),
                )
        }
        HarmonicSpec::HighestWeight { d, .. } => {
            let c2 = (-ln_highest_weight_norm_sq(*d, n)).exp();
            let (t, w) = gauss_legendre(q);
            if *d == 2 {
                // |x₁+ix₂|² = 1 − x₃²
                2.0 * std::f64::consts::PI
                    * neumaier_sum(t.iter().zip(&w).map(|(t, w)| w * c2 * (1.0 - t * t).powi(n as i32)))
            } else {
                // Hopf coordinates: u = |x₁+ix₂|² is uniform with density 2π² on [0, 1]
                let pi2 = std::f64::consts::PI.powi(2);
                pi2 * neumaier_sum(t.iter().zip(&w).map(|(t, w)| {
                    let u = (t + 1.0) / 2.0;
                    w * c2 * u.powi(n as i32)
                }))
            }
        }
        HarmonicSpec::Averaged { .. } => {
            let grid = build_grid(GridTarget::Sphere {
                d: 2,
                resolution: 2 * n + 16,
            })?;
            return l2_norm_on_manifold(f.as_ref(), &grid);
        }
    };
    Ok(sq.sqrt())
}
