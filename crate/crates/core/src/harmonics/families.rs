use std::f64::consts::PI;

use num_complex::Complex64;

use super::bump::Bump;
use super::special::{
    gegenbauer, ln_highest_weight_norm_sq, ln_zonal_norm_sq, normalized_assoc_legendre,
};
use super::SphereFunction;
use crate::error::{invalid, Error, Result};
use crate::geometry::{dot, gauss_legendre, UnitVector};

fn check_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

/// L²-normalized zonal harmonic of degree n about `pole` on S^d.
#[derive(Debug, Clone, Copy)]
pub struct Zonal {
    d: usize,
    n: usize,
    pole: UnitVector,
    alpha: f64,
    scale: f64,
}

impl Zonal {
    pub fn new(d: usize, n: usize, pole: UnitVector) -> Result<Self> {
        check_dim(d)?;
        if pole.ambient() != d + 1 {
            return Err(Error::DimensionMismatch {
                left: d + 1,
                right: pole.ambient(),
            });
        }
        Ok(Self {
            d,
            n,
            pole,
            alpha: (d as f64 - 1.0) / 2.0,
            scale: (-0.5 * ln_zonal_norm_sq(d, n)).exp(),
        })
    }

    pub fn pole(&self) -> UnitVector {
        self.pole
    }

    /// Z_n as a function of t = ⟨x, pole⟩.
    pub fn profile(&self, t: f64) -> f64 {
        self.scale * gegenbauer(self.n, self.alpha, t.clamp(-1.0, 1.0))
    }
}

impl SphereFunction for Zonal {
    fn dim(&self) -> usize {
        self.d
    }
    fn degree(&self) -> usize {
        self.n
    }
    fn eval(&self, x: &UnitVector) -> Complex64 {
        Complex64::new(self.profile(dot(x.coords(), self.pole.coords())), 0.0)
    }
}

/// Fully normalized Y_n^m on S², with Y_n^{−m} = conj(Y_n^m).
#[derive(Debug, Clone, Copy)]
pub struct AssocHarmonic {
    n: usize,
    m: i64,
}

impl AssocHarmonic {
    pub fn new(n: usize, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > n {
            return Err(invalid("m", format!("|m| = {} exceeds degree {n}", m.abs())));
        }
        Ok(Self { n, m })
    }

    pub fn order(&self) -> i64 {
        self.m
    }
}

impl SphereFunction for AssocHarmonic {
    fn dim(&self) -> usize {
        2
    }
    fn degree(&self) -> usize {
        self.n
    }
    fn eval(&self, x: &UnitVector) -> Complex64 {
        let c = x.coords();
        let am = self.m.unsigned_abs() as usize;
        let p = normalized_assoc_legendre(self.n, am, c[2].clamp(-1.0, 1.0));
        if am == 0 {
            return Complex64::new(p, 0.0);
        }
        let phi = c[1].atan2(c[0]);
        let v = Complex64::from_polar(p, am as f64 * phi);
        if self.m < 0 {
            v.conj()
        } else {
            v
        }
    }
}

/// c_{n,d}·(x₁ + i x₂)^n with unit L²(S^d) norm.
#[derive(Debug, Clone, Copy)]
pub struct HighestWeight {
    d: usize,
    n: usize,
    ln_c: f64,
}

impl HighestWeight {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Self {
            d,
            n,
            ln_c: -0.5 * ln_highest_weight_norm_sq(d, n),
        })
    }

    /// The normalization constant c_{n,d}.
    pub fn constant(&self) -> f64 {
        self.ln_c.exp()
    }
}

/// c·z^n evaluated through log|z| so large n cannot overflow.
fn scaled_power(ln_c: f64, z: Complex64, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(ln_c.exp(), 0.0);
    }
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar((ln_c + n as f64 * r.ln()).exp(), n as f64 * z.arg())
}

impl SphereFunction for HighestWeight {
    fn dim(&self) -> usize {
        self.d
    }
    fn degree(&self) -> usize {
        self.n
    }
    fn eval(&self, x: &UnitVector) -> Complex64 {
        let c = x.coords();
        scaled_power(self.ln_c, Complex64::new(c[0], c[1]), self.n)
    }
}

/// Window average of rotated highest-weight harmonics on S²:
/// u = Σ_j a_j e_{n,φ_j} with e_{n,φ} = c_{n,2}(x₁ + i(cos φ x₂ + sin φ x₃))^n
/// and a_j the Gauss–Legendre weights times ψ(n^{1/3}φ_j/δ), then scaled to
/// unit L² norm.
#[derive(Debug, Clone)]
pub struct Averaged {
    n: usize,
    delta: f64,
    bump: Bump,
    rotations: Vec<(f64, f64)>,
    coefficients: Vec<f64>,
    ln_c: f64,
    inv_norm: f64,
    mass: f64,
}

impl Averaged {
    pub fn new(n: usize, delta: f64, bump: Bump) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "averaged harmonics need n ≥ 1"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(invalid("delta", format!("{delta} must be positive")));
        }
        let nf = n as f64;
        let half = delta * nf.powf(-1.0 / 3.0);
        if half > PI {
            return Err(invalid(
                "delta",
                format!("window half-width {half} exceeds π"),
            ));
        }
        let q = 32 + (4.0 * nf.cbrt()).ceil() as usize;
        let (t, w) = gauss_legendre(q);
        let mut rotations = Vec::with_capacity(q);
        let mut coefficients = Vec::with_capacity(q);
        let mut angles = Vec::with_capacity(q);
        for (ti, wi) in t.iter().zip(&w) {
            let phi = half * ti;
            angles.push(phi);
            rotations.push(phi.sin_cos());
            // ψ(n^{1/3}φ/δ) = ψ(t)
            coefficients.push(half * wi * bump.value(*ti));
        }
        let mass: f64 = coefficients.iter().sum();
        // ⟨e_{n,φ}, e_{n,φ'}⟩ = cos^{2n}((φ − φ')/2)
        let mut g = 0.0;
        for (a, pa) in coefficients.iter().zip(&angles) {
            for (b, pb) in coefficients.iter().zip(&angles) {
                let c = ((pa - pb) / 2.0).cos();
                g += a * b * (2.0 * nf * c.ln()).exp();
            }
        }
        Ok(Self {
            n,
            delta,
            bump,
            rotations,
            coefficients,
            ln_c: -0.5 * ln_highest_weight_norm_sq(2, n),
            inv_norm: 1.0 / g.sqrt(),
            mass,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn bump(&self) -> Bump {
        self.bump
    }

    /// Half-width δ·n^{−1/3} of the rotation window.
    pub fn half_width(&self) -> f64 {
        self.delta * (self.n as f64).powf(-1.0 / 3.0)
    }

    fn raw(&self, x: &UnitVector) -> Complex64 {
        let c = x.coords();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((s, co), a) in self.rotations.iter().zip(&self.coefficients) {
            let z = Complex64::new(c[0], co * c[1] + s * c[2]);
            acc += *a * scaled_power(self.ln_c, z, self.n);
        }
        acc
    }

    /// Window average Σ a_j e_{n,φ_j} / Σ a_j, which tends to e_{n,0} as δ → 0.
    pub fn window_mean(&self, x: &UnitVector) -> Complex64 {
        self.raw(x) / self.mass
    }
}

impl SphereFunction for Averaged {
    fn dim(&self) -> usize {
        2
    }
    fn degree(&self) -> usize {
        self.n
    }
    fn eval(&self, x: &UnitVector) -> Complex64 {
        self.raw(x) * self.inv_norm
    }
}

/// Normalized zonal harmonic Z_n about `pole`, real-valued.
pub fn eval_zonal(d: usize, n: usize, pole: &UnitVector, x: &UnitVector) -> Result<f64> {
    check_dim(d)?;
    if x.ambient() != d + 1 || pole.ambient() != d + 1 {
        return Err(Error::DimensionMismatch {
            left: d + 1,
            right: if x.ambient() != d + 1 { x.ambient() } else { pole.ambient() },
        });
    }
    Ok(Zonal::new(d, n, *pole)?.eval(x).re)
}

/// Normalized Y_n^m on S².
pub fn eval_assoc_harmonic(n: usize, m: i64, x: &UnitVector) -> Result<Complex64> {
    let y = AssocHarmonic::new(n, m)?;
    if x.ambient() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: x.ambient(),
        });
    }
    Ok(y.eval(x))
}

/// Normalized highest-weight harmonic c_{n,d}(x₁ + i x₂)^n.
pub fn eval_highest_weight(d: usize, n: usize, x: &UnitVector) -> Result<Complex64> {
    let h = HighestWeight::new(d, n)?;
    if x.ambient() != d + 1 {
        return Err(Error::DimensionMismatch {
            left: d + 1,
            right: x.ambient(),
        });
    }
    Ok(h.eval(x))
}

/// Normalized window-averaged harmonic u_n.
///
/// Builds the φ-quadrature on every call; construct [`Averaged`] once when
/// evaluating at many points.
pub fn eval_averaged(n: usize, delta: f64, bump: Bump, x: &UnitVector) -> Result<Complex64> {
    let u = Averaged::new(n, delta, bump)?;
    if x.ambient() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: x.ambient(),
        });
    }
    Ok(u.eval(x))
}
