use crate::error::{invalid, Error, Result};

/// Largest ambient dimension stored inline (S^3 lives in R^4).
pub const MAX_AMBIENT: usize = 4;

/// Tolerance on |x| - 1 accepted by [`UnitVector::new`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Tolerance on <x, v> accepted for tangent vectors.
pub const TANGENT_TOLERANCE: f64 = 1e-10;

/// A point of S^d stored as a unit vector of R^(d+1).
///
/// Coordinates beyond `ambient` are zero. The type is `Copy` so grids of
/// millions of points need no per-point allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector {
    coords: [f64; MAX_AMBIENT],
    ambient: usize,
}

impl UnitVector {
    /// Checked constructor: the input must already have unit norm.
    pub fn new(coords: &[f64]) -> Result<Self> {
        let v = Self::pack(coords)?;
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit { norm });
        }
        Ok(v)
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(coords: &[f64]) -> Result<Self> {
        let mut v = Self::pack(coords)?;
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(invalid("coords", "cannot normalize a zero or non-finite vector"));
        }
        for c in &mut v.coords[..v.ambient] {
            *c /= norm;
        }
        Ok(v)
    }

    /// Builds a point without checks. The caller guarantees unit norm.
    pub(crate) fn from_raw(coords: [f64; MAX_AMBIENT], ambient: usize) -> Self {
        Self { coords, ambient }
    }

    fn pack(coords: &[f64]) -> Result<Self> {
        if coords.len() < 3 || coords.len() > MAX_AMBIENT {
            return Err(Error::UnsupportedDimension(coords.len().saturating_sub(1)));
        }
        let mut c = [0.0; MAX_AMBIENT];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self {
            coords: c,
            ambient: coords.len(),
        })
    }

    /// Standard basis vector e_k (0-based) in R^(d+1).
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if !(2..=MAX_AMBIENT - 1).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        if k > d {
            return Err(invalid("k", format!("basis index {k} out of range for S^{d}")));
        }
        let mut c = [0.0; MAX_AMBIENT];
        c[k] = 1.0;
        Ok(Self::from_raw(c, d + 1))
    }

    /// North pole e_{d} of S^d.
    pub fn north(d: usize) -> Result<Self> {
        Self::basis(d, d)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.ambient]
    }

    /// Sphere dimension d (ambient dimension minus one).
    pub fn dim(&self) -> usize {
        self.ambient - 1
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        dot(self.coords(), other.coords())
    }

    pub fn neg(&self) -> Self {
        let mut c = self.coords;
        for x in &mut c {
            *x = -*x;
        }
        Self::from_raw(c, self.ambient)
    }

    pub(crate) fn raw(&self) -> [f64; MAX_AMBIENT] {
        self.coords
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal basis of the tangent space at `x`, by Gram–Schmidt against the
/// standard basis vectors least aligned with `x`.
///
/// Deterministic in `x`; returns d vectors of length d+1.
pub fn tangent_frame(x: &UnitVector) -> Vec<Vec<f64>> {
    let n = x.ambient();
    let xc = x.coords();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| xc[i].abs().total_cmp(&xc[j].abs()));
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for &k in &order {
        if frame.len() == n - 1 {
            break;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        // two passes of Gram–Schmidt keep the frame orthonormal to ~1e-16
        for _ in 0..2 {
            let p = dot(&v, xc);
            for i in 0..n {
                v[i] -= p * xc[i];
            }
            for e in &frame {
                let p = dot(&v, e);
                for i in 0..n {
                    v[i] -= p * e[i];
                }
            }
        }
        let nv = norm(&v);
        if nv > 1e-8 {
            for c in &mut v {
                *c /= nv;
            }
            frame.push(v);
        }
    }
    frame
}
