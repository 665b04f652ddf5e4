//! Oracles shared by unit tests.

use num_complex::Complex64;

use crate::geometry::UnitVector;

/// Laplace–Beltrami of `f` at `x` by finite differences.
///
/// For F(y) = f(y/|y|), homogeneous of degree 0, the Euclidean Laplacian of
/// F on the unit sphere equals Δ_S f. A second-order central stencil in
/// the ambient coordinates avoids polar-coordinate singularities.
pub fn fd_laplacian(f: &dyn Fn(&UnitVector) -> Complex64, x: &UnitVector, h: f64) -> Complex64 {
    let dim = x.ambient();
    let base = x.coords();
    let at = |k: usize, s: f64| {
        let mut y = base.to_vec();
        y[k] += s;
        f(&UnitVector::normalized(&y).unwrap())
    };
    let center = f(x);
    let mut lap = Complex64::new(0.0, 0.0);
    for k in 0..dim {
        lap += at(k, h) + at(k, -h) - 2.0 * center;
    }
    lap / (h * h)
}

/// Deterministic pseudo-random points on S^d (golden-ratio spiral for d=2,
/// a product lattice for d=3).
pub fn sample_points(d: usize, count: usize) -> Vec<UnitVector> {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    (0..count)
        .map(|i| {
            let t = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let s = (1.0 - t * t).sqrt();
            let phi = 2.0 * std::f64::consts::PI * i as f64 / golden;
            if d == 2 {
                UnitVector::normalized(&[s * phi.cos(), s * phi.sin(), t]).unwrap()
            } else {
                let chi = 0.3 + 2.5 * ((i as f64 * golden).fract());
                let (sc, cc) = chi.sin_cos();
                UnitVector::normalized(&[sc * s * phi.cos(), sc * s * phi.sin(), sc * t, cc])
                    .unwrap()
            }
        })
        .collect()
}
