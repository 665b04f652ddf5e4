use std::f64::consts::PI;

use super::curve::CurveSpec;
use super::point::{dot, norm, UnitVector, MAX_AMBIENT};
use crate::error::{invalid, Error, Result};

/// Quadrature rule on a sphere, a great subsphere, or a curve.
///
/// Weights carry the Riemannian measure, so they sum to the total
/// area/length of the domain.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub nodes: Vec<UnitVector>,
    pub weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        neumaier_sum(self.weights.iter().copied())
    }
}

/// A great 2-sphere inside S³: the unit sphere of span(b0, b1, b2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatSubsphere {
    frame: [[f64; 4]; 3],
}

impl GreatSubsphere {
    /// {x ∈ S³ : x₄ = 0}.
    pub fn standard() -> Self {
        Self {
            frame: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
            ],
        }
    }

    /// Span of three vectors of R⁴, orthonormalized in order.
    pub fn from_span(vectors: [[f64; 4]; 3]) -> Result<Self> {
        let mut frame = [[0.0; 4]; 3];
        for k in 0..3 {
            let mut v = vectors[k];
            for _ in 0..2 {
                for e in frame.iter().take(k) {
                    let p = dot(&v, e);
                    for i in 0..4 {
                        v[i] -= p * e[i];
                    }
                }
            }
            let n = norm(&v);
            if n < 1e-12 {
                return Err(invalid("vectors", "spanning vectors are linearly dependent"));
            }
            frame[k] = v.map(|c| c / n);
        }
        Ok(Self { frame })
    }

    /// Embeds a point of the model S² ⊂ R³.
    pub fn embed(&self, y: &[f64; 3]) -> UnitVector {
        let mut c = [0.0; MAX_AMBIENT];
        for (k, e) in self.frame.iter().enumerate() {
            for i in 0..4 {
                c[i] += y[k] * e[i];
            }
        }
        UnitVector::from_raw(c, 4)
    }

    /// The image of the model north pole (0, 0, 1), which is the axis of
    /// the product grid built on this subsphere.
    pub fn pole(&self) -> UnitVector {
        self.embed(&[0.0, 0.0, 1.0])
    }

    /// Orthonormal basis of the spanning 3-space.
    pub fn frame(&self) -> [[f64; 4]; 3] {
        self.frame
    }

    pub fn area(&self) -> f64 {
        4.0 * PI
    }
}

/// What to build a grid on.
#[derive(Debug, Clone, Copy)]
pub enum GridTarget {
    /// S^d with `resolution` latitude nodes (d ∈ {2, 3}).
    Sphere { d: usize, resolution: usize },
    /// Uniform arc-length grid with `points` nodes.
    Curve { curve: CurveSpec, points: usize },
    /// Great 2-sphere in S³, product rule with `resolution` latitude nodes.
    Subsphere {
        subsphere: GreatSubsphere,
        resolution: usize,
    },
}

pub fn build_grid(target: GridTarget) -> Result<QuadratureGrid> {
    match target {
        GridTarget::Sphere { d, resolution } => {
            check_resolution(resolution)?;
            match d {
                2 => Ok(sphere2_grid(resolution, |y| {
                    UnitVector::from_raw([y[0], y[1], y[2], 0.0], 3)
                })),
                3 => Ok(sphere3_grid(resolution)),
                _ => Err(Error::UnsupportedDimension(d)),
            }
        }
        GridTarget::Curve { curve, points } => {
            check_resolution(points)?;
            Ok(curve_grid(&curve, points))
        }
        GridTarget::Subsphere {
            subsphere,
            resolution,
        } => {
            check_resolution(resolution)?;
            Ok(sphere2_grid(resolution, |y| subsphere.embed(y)))
        }
    }
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 4 {
        return Err(invalid("resolution", format!("{n} < 4")));
    }
    Ok(())
}

/// Gauss–Legendre in cos θ × 2·res uniform longitudes.
fn sphere2_grid(res: usize, embed: impl Fn(&[f64; 3]) -> UnitVector) -> QuadratureGrid {
    let (t, w) = gauss_legendre(res);
    let nphi = 2 * res;
    let dphi = 2.0 * PI / nphi as f64;
    let mut nodes = Vec::with_capacity(res * nphi);
    let mut weights = Vec::with_capacity(res * nphi);
    for (ti, wi) in t.iter().zip(&w) {
        let st = (1.0 - ti * ti).max(0.0).sqrt();
        for j in 0..nphi {
            let (sp, cp) = (j as f64 * dphi).sin_cos();
            nodes.push(embed(&[st * cp, st * sp, *ti]));
            weights.push(wi * dphi);
        }
    }
    QuadratureGrid { nodes, weights }
}

/// Chebyshev-U in cos χ (weight sin²χ) × Gauss–Legendre in cos θ × uniform φ.
fn sphere3_grid(res: usize) -> QuadratureGrid {
    let (tc, wc) = gauss_chebyshev_u(res);
    let (tl, wl) = gauss_legendre(res);
    let nphi = 2 * res;
    let dphi = 2.0 * PI / nphi as f64;
    let mut nodes = Vec::with_capacity(res * res * nphi);
    let mut weights = Vec::with_capacity(res * res * nphi);
    for (c, wcc) in tc.iter().zip(&wc) {
        let sc = (1.0 - c * c).max(0.0).sqrt();
        for (t, wt) in tl.iter().zip(&wl) {
            let st = (1.0 - t * t).max(0.0).sqrt();
            for j in 0..nphi {
                let (sp, cp) = (j as f64 * dphi).sin_cos();
                nodes.push(UnitVector::from_raw(
                    [sc * st * cp, sc * st * sp, sc * t, *c],
                    4,
                ));
                weights.push(wcc * wt * dphi);
            }
        }
    }
    QuadratureGrid { nodes, weights }
}

fn curve_grid(c: &CurveSpec, n: usize) -> QuadratureGrid {
    let l = c.length();
    let h = l / n as f64;
    QuadratureGrid {
        nodes: (0..n).map(|i| c.point(i as f64 * h)).collect(),
        weights: vec![h; n],
    }
}

/// Gauss–Legendre nodes (ascending) and weights on [−1, 1].
///
/// Newton iteration on the three-term recurrence from Tricomi's initial
/// guesses; converges to machine precision in a handful of steps.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let k = (i + 1) as f64;
        let theta = PI * (4.0 * k - 1.0) / (4.0 * nf + 2.0);
        let mut z = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss rule for ∫ f(t)·√(1−t²) dt on [−1, 1] (Chebyshev second kind).
pub fn gauss_chebyshev_u(n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = PI / (n as f64 + 1.0);
    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let a = k as f64 * h;
        let s = a.sin();
        x.push(a.cos());
        w.push(h * s * s);
    }
    (x, w)
}

/// Compensated summation; grid sums run to millions of terms.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
