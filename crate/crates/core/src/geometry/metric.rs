use super::point::{dot, norm, tangent_frame, UnitVector, MAX_AMBIENT, TANGENT_TOLERANCE};
use crate::error::{invalid, Error, Result};

/// Finite-difference step for gradient and covariant-derivative checks.
pub const FD_STEP: f64 = 1e-5;

/// Great-circle distance in radians, in [0, π].
///
/// Computed as 2·atan2(|x − y|, |x + y|), which agrees with
/// arccos⟨x, y⟩ but keeps full relative accuracy near 0 and π.
pub fn sphere_distance(x: &UnitVector, y: &UnitVector) -> Result<f64> {
    check_same_dim(x, y)?;
    check_unit(x)?;
    check_unit(y)?;
    Ok(distance_unchecked(x, y))
}

pub(crate) fn distance_unchecked(x: &UnitVector, y: &UnitVector) -> f64 {
    let (a, b) = (x.raw(), y.raw());
    let mut diff = 0.0;
    let mut sum = 0.0;
    for i in 0..MAX_AMBIENT {
        let d = a[i] - b[i];
        let s = a[i] + b[i];
        diff += d * d;
        sum += s * s;
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

fn check_same_dim(x: &UnitVector, y: &UnitVector) -> Result<()> {
    if x.ambient() != y.ambient() {
        return Err(Error::DimensionMismatch {
            left: x.ambient(),
            right: y.ambient(),
        });
    }
    Ok(())
}

fn check_unit(x: &UnitVector) -> Result<()> {
    let n = x.norm();
    if (n - 1.0).abs() > super::point::UNIT_TOLERANCE {
        return Err(Error::NotUnit { norm: n });
    }
    Ok(())
}

/// Exponential map: cos|v|·x + sin|v|·v/|v|.
pub fn exp_map(x: &UnitVector, v: &[f64]) -> Result<UnitVector> {
    if v.len() != x.ambient() {
        return Err(Error::DimensionMismatch {
            left: x.ambient(),
            right: v.len(),
        });
    }
    let inner = dot(x.coords(), v);
    if inner.abs() > TANGENT_TOLERANCE {
        return Err(Error::NotTangent { inner });
    }
    Ok(exp_unchecked(x, v))
}

pub(crate) fn exp_unchecked(x: &UnitVector, v: &[f64]) -> UnitVector {
    let len = norm(v);
    if len == 0.0 {
        return *x;
    }
    let (s, c) = len.sin_cos();
    let xc = x.raw();
    let mut out = [0.0; MAX_AMBIENT];
    for i in 0..x.ambient() {
        out[i] = c * xc[i] + s * v[i] / len;
    }
    // renormalize away the O(eps) drift
    let n = out.iter().map(|a| a * a).sum::<f64>().sqrt();
    for a in &mut out {
        *a /= n;
    }
    UnitVector::from_raw(out, x.ambient())
}

/// Inverse of the exponential map for y ≠ −x: the tangent vector at `x`
/// of length d(x, y) pointing toward `y`.
pub fn log_map(x: &UnitVector, y: &UnitVector) -> Result<Vec<f64>> {
    check_same_dim(x, y)?;
    let d = distance_unchecked(x, y);
    if (std::f64::consts::PI - d) < 1e-12 {
        return Err(invalid("y", "log map undefined at the antipode"));
    }
    let (xc, yc) = (x.coords(), y.coords());
    let p = dot(xc, yc);
    let mut w: Vec<f64> = yc.iter().zip(xc).map(|(b, a)| b - p * a).collect();
    let nw = norm(&w);
    if nw == 0.0 {
        return Ok(vec![0.0; x.ambient()]);
    }
    for c in &mut w {
        *c *= d / nw;
    }
    Ok(w)
}

/// Deviation |∇_x ψ(x′) − ω| where ψ(x) = −d(x, exp_{x′}(rω)).
///
/// The gradient is taken by central differences (step [`FD_STEP`]) in
/// normal coordinates at `base`; the result is expressed back in ambient
/// coordinates before comparing with `omega`.
pub fn distance_gradient_check(base: &UnitVector, r: f64, omega: &[f64]) -> Result<f64> {
    if !(r > 1e-3 && r < std::f64::consts::PI - 1e-3) {
        return Err(invalid("r", format!("{r} is too close to 0 or π for a smooth distance")));
    }
    if omega.len() != base.ambient() {
        return Err(Error::DimensionMismatch {
            left: base.ambient(),
            right: omega.len(),
        });
    }
    let inner = dot(base.coords(), omega);
    if inner.abs() > TANGENT_TOLERANCE {
        return Err(Error::NotTangent { inner });
    }
    if (norm(omega) - 1.0).abs() > 1e-10 {
        return Err(invalid("omega", "direction must be a unit tangent vector"));
    }
    let v: Vec<f64> = omega.iter().map(|w| r * w).collect();
    let target = exp_unchecked(base, &v);
    let frame = tangent_frame(base);
    let psi = |u: &[f64]| {
        let mut t = vec![0.0; base.ambient()];
        for (e, &uk) in frame.iter().zip(u) {
            for i in 0..t.len() {
                t[i] += uk * e[i];
            }
        }
        -distance_unchecked(&exp_unchecked(base, &t), &target)
    };
    let mut grad = vec![0.0; base.ambient()];
    let mut u = vec![0.0; frame.len()];
    for (k, e) in frame.iter().enumerate() {
        u[k] = FD_STEP;
        let plus = psi(&u);
        u[k] = -FD_STEP;
        let minus = psi(&u);
        u[k] = 0.0;
        let g = (plus - minus) / (2.0 * FD_STEP);
        for i in 0..grad.len() {
            grad[i] += g * e[i];
        }
    }
    let dev: Vec<f64> = grad.iter().zip(omega).map(|(g, w)| g - w).collect();
    Ok(norm(&dev))
}
