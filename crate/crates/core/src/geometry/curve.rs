use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::metric::FD_STEP;
use super::point::{cross, dot, norm, UnitVector, MAX_AMBIENT};
use crate::error::{invalid, Result};

/// Family of closed curves on S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    GreatCircle,
    /// Circle at angular radius `colatitude` ∈ (0, π/2] from the frame axis.
    LatitudeCircle { colatitude: f64 },
}

/// Closed unit-speed curve on S², stored as kind + orthonormal frame.
///
/// With frame (axis, e1, e2 = axis × e1) and colatitude θ₀ the curve is
/// γ(s) = cos θ₀·axis + sin θ₀·(cos(s/sin θ₀)·e1 + sin(s/sin θ₀)·e2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSpec {
    kind: CurveKind,
    axis: [f64; 3],
    e1: [f64; 3],
    e2: [f64; 3],
}

impl CurveSpec {
    /// The equator x₃ = 0, starting at (1, 0, 0) and heading toward (0, 1, 0).
    pub fn equator() -> Self {
        Self {
            kind: CurveKind::GreatCircle,
            axis: [0.0, 0.0, 1.0],
            e1: [1.0, 0.0, 0.0],
            e2: [0.0, 1.0, 0.0],
        }
    }

    /// Latitude circle at colatitude θ₀ about the x₃-axis; θ₀ = π/2 is the equator.
    pub fn latitude(colatitude: f64) -> Result<Self> {
        Self::with_frame(
            CurveKind::LatitudeCircle { colatitude },
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0],
        )
    }

    /// Generic constructor. `e1` is orthogonalized against `axis`.
    pub fn with_frame(kind: CurveKind, axis: [f64; 3], e1: [f64; 3]) -> Result<Self> {
        if let CurveKind::LatitudeCircle { colatitude } = kind {
            if !(colatitude > 0.0 && colatitude <= FRAC_PI_2 + 1e-15) {
                return Err(invalid("colatitude", format!("{colatitude} not in (0, π/2]")));
            }
        }
        let na = norm(&axis);
        if !(na > 0.0) {
            return Err(invalid("axis", "zero axis"));
        }
        let a = axis.map(|c| c / na);
        let p = dot(&e1, &a);
        let mut u = [e1[0] - p * a[0], e1[1] - p * a[1], e1[2] - p * a[2]];
        let nu = norm(&u);
        if nu < 1e-12 {
            return Err(invalid("e1", "start direction parallel to axis"));
        }
        u = u.map(|c| c / nu);
        let v = cross(&a, &u);
        Ok(Self {
            kind,
            axis: a,
            e1: u,
            e2: v,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn colatitude(&self) -> f64 {
        match self.kind {
            CurveKind::GreatCircle => FRAC_PI_2,
            CurveKind::LatitudeCircle { colatitude } => colatitude,
        }
    }

    /// True when the geodesic curvature does not vanish.
    pub fn is_curved(&self) -> bool {
        self.geodesic_curvature_exact() > 1e-12
    }

    /// Length L of the closed curve.
    pub fn length(&self) -> f64 {
        2.0 * PI * self.colatitude().sin()
    }

    /// γ(s); periodic in `s` with period L.
    pub fn point(&self, s: f64) -> UnitVector {
        let (st, ct) = match self.kind {
            CurveKind::GreatCircle => (1.0, 0.0),
            CurveKind::LatitudeCircle { colatitude } => colatitude.sin_cos(),
        };
        let phi = s / st;
        let (sp, cp) = phi.sin_cos();
        let mut c = [0.0; MAX_AMBIENT];
        for i in 0..3 {
            c[i] = ct * self.axis[i] + st * (cp * self.e1[i] + sp * self.e2[i]);
        }
        UnitVector::from_raw(c, 3)
    }

    /// Unit tangent γ′(s).
    pub fn tangent(&self, s: f64) -> [f64; 3] {
        let st = self.colatitude().sin();
        let phi = s / st;
        let (sp, cp) = phi.sin_cos();
        [0, 1, 2].map(|i| -sp * self.e1[i] + cp * self.e2[i])
    }

    /// Closed-form geodesic curvature: 0 on great circles, cot θ₀ on latitude circles.
    pub fn geodesic_curvature_exact(&self) -> f64 {
        match self.kind {
            CurveKind::GreatCircle => 0.0,
            CurveKind::LatitudeCircle { colatitude } => {
                let k = colatitude.cos() / colatitude.sin();
                if k.abs() < 1e-15 {
                    0.0
                } else {
                    k
                }
            }
        }
    }
}

/// Point on the curve, with `s` wrapped modulo the length.
pub fn curve_point(c: &CurveSpec, s: f64) -> UnitVector {
    c.point(s)
}

/// Geodesic curvature √g(Dγ′/ds, Dγ′/ds) at `s`.
///
/// Constant along the supported families: 0 on great circles, cot θ₀ on
/// latitude circles.
pub fn geodesic_curvature(c: &CurveSpec, _s: f64) -> f64 {
    c.geodesic_curvature_exact()
}

/// Numerical |Dγ′/ds| at `s`, independent of the closed form.
///
/// The covariant acceleration on the embedded sphere is the tangential part
/// of the ambient second derivative; the latter is taken by a central
/// second-order stencil with step [`FD_STEP`].
pub fn covariant_acceleration_fd(c: &CurveSpec, s: f64) -> f64 {
    let h = FD_STEP;
    let p0 = c.point(s);
    let pp = c.point(s + h);
    let pm = c.point(s - h);
    let x = p0.coords();
    let acc: Vec<f64> = (0..3)
        .map(|i| (pp.coords()[i] - 2.0 * x[i] + pm.coords()[i]) / (h * h))
        .collect();
    let radial = dot(&acc, x);
    let tangential: Vec<f64> = (0..3).map(|i| acc[i] - radial * x[i]).collect();
    norm(&tangential)
}
