//! L^p norms of eigenfunction restrictions, degree sweeps, power-law fits,
//! and the sharp exponents they are compared against.

mod fit;
mod norms;
mod oracle;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{dot, CurveSpec, GreatSubsphere};
use crate::harmonics::{eigenvalue, normalized_assoc_legendre, AssocHarmonic, HarmonicSpec};

pub use fit::{fit_exponent, linear_fit, log_log_fit, ExponentFit, Verdict};
pub use norms::{
    ambient_l2_norm, curve_points_floor, l2_norm_on_manifold, lp_from_values, lp_norm_on_curve,
    lp_norm_on_subsphere, subsphere_resolution_floor, CURVE_POINTS_MIN, POINTS_PER_WAVELENGTH,
};
pub use oracle::{theoretical_exponent, TheoreticalExponent};

/// One row of a degree sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub n: usize,
    pub lambda: f64,
    #[serde(with = "exponent_serde")]
    pub p: f64,
    pub restricted_norm: f64,
    pub ambient_norm: f64,
    pub ratio: f64,
}

/// Serializes p = ∞ as the string "inf" so JSON stays valid.
pub mod exponent_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => super::parse_exponent(&t).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses an exponent: a number ≥ 2, or "inf"/"infinity"/"∞".
pub fn parse_exponent(text: &str) -> std::result::Result<f64, String> {
    let t = text.trim();
    if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity") || t == "∞" {
        return Ok(f64::INFINITY);
    }
    let p: f64 = t.parse().map_err(|_| format!("cannot parse exponent {t:?}"))?;
    if p.is_nan() || p < 2.0 {
        return Err(format!("exponent {p} is not in [2, ∞]"));
    }
    Ok(p)
}

/// What a sweep evaluates at each degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTemplate {
    /// The given family member, re-degreed.
    Harmonic(HarmonicSpec),
    /// Y_n^{m*} with m* ∈ [n/2, n] maximizing the restricted L² norm on a
    /// latitude circle (the circle is a turning latitude of Y_n^{m*}).
    TurningPoint,
}

/// Submanifold carrying the restriction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RestrictionTarget {
    Curve(CurveSpec),
    Subsphere(GreatSubsphere),
}

impl RestrictionTarget {
    /// (d, k, curved) of the pair (M, Σ).
    pub fn signature(&self) -> (usize, usize, bool) {
        match self {
            RestrictionTarget::Curve(c) => (2, 1, c.is_curved()),
            RestrictionTarget::Subsphere(_) => (3, 2, false),
        }
    }

    /// Sharp exponent for this target at p.
    pub fn exponent(&self, p: f64) -> Result<TheoreticalExponent> {
        let (d, k, curved) = self.signature();
        theoretical_exponent(d, k, p, curved)
    }
}

/// Expected slope and tolerance for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contract {
    pub theoretical: f64,
    pub tolerance: f64,
}

/// m* maximizing |P̄_n^m(cos θ₀)| over m ∈ [⌈n/2⌉, n].
///
/// On a latitude circle |Y_n^m| is constant, so this also maximizes the
/// restricted L² norm.
pub fn turning_point_order(n: usize, colatitude: f64) -> usize {
    let t = colatitude.cos();
    (n.div_ceil(2)..=n)
        .map(|m| (m, normalized_assoc_legendre(n, m, t).abs()))
        .fold((n, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b })
        .0
}

fn member(family: &FamilyTemplate, target: &RestrictionTarget, n: usize) -> Result<HarmonicSpec> {
    match family {
        FamilyTemplate::Harmonic(spec) => Ok(spec.with_degree(n)),
        FamilyTemplate::TurningPoint => match target {
            RestrictionTarget::Curve(c) if c.is_curved() => Ok(HarmonicSpec::AssocLegendre {
                n,
                m: turning_point_order(n, c.colatitude()) as i64,
            }),
            _ => Err(invalid("family", "turning-point family needs a latitude circle")),
        },
    }
}

/// Restricted L^p norm with the default grid, plus the Richardson
/// doubling check for p = ∞.
fn restricted_norm(
    f: &dyn crate::harmonics::SphereFunction,
    target: &RestrictionTarget,
    p: f64,
    grid: Option<usize>,
) -> Result<f64> {
    let eval = |size: usize| match target {
        RestrictionTarget::Curve(c) => lp_norm_on_curve(f, c, p, size),
        RestrictionTarget::Subsphere(s) => lp_norm_on_subsphere(f, s, p, size),
    };
    let size = grid.unwrap_or_else(|| match target {
        RestrictionTarget::Curve(_) => curve_points_floor(f.eigenvalue()),
        RestrictionTarget::Subsphere(_) => subsphere_resolution_floor(f.degree(), p),
    });
    let v = eval(size)?;
    if p.is_infinite() {
        let v2 = eval(2 * size)?;
        if (v2 - v).abs() > 1e-5 * v2.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::Numerical(format!(
                "sup norm not converged under grid doubling: {v} vs {v2}"
            )));
        }
        return Ok(v.max(v2));
    }
    Ok(v)
}

/// Evaluates one family member per degree.
///
/// `grid` overrides the curve point count or subsphere resolution (it
/// must still meet the floors). Samples come back in degree order.
pub fn sweep(
    family: &FamilyTemplate,
    target: &RestrictionTarget,
    p: f64,
    degrees: &[usize],
    grid: Option<usize>,
) -> Result<Vec<NormSample>> {
    if degrees.len() < 4 {
        return Err(invalid("degrees", format!("{} degrees; at least 4 required", degrees.len())));
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("degrees", "degrees must be strictly increasing"));
    }
    let (d, _, _) = target.signature();
    degrees
        .par_iter()
        .map(|&n| {
            let spec = member(family, target, n)?;
            if spec.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: spec.dim(),
                });
            }
            let f = spec.build()?;
            let restricted = restricted_norm(f.as_ref(), target, p, grid)?;
            let ambient = ambient_l2_norm(&spec)?;
            Ok(NormSample {
                n,
                lambda: eigenvalue(d, n),
                p,
                restricted_norm: restricted,
                ambient_norm: ambient,
                ratio: restricted / ambient,
            })
        })
        .collect()
}

/// Geometric degree ladder from `lo` to `hi` with ratio √2, rounded and
/// deduplicated; `hi` is always included.
pub fn geometric_degrees(lo: usize, hi: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let v = (lo as f64 * 2f64.sqrt().powi(k)).round() as usize;
        if v >= hi {
            break;
        }
        if out.last() != Some(&v) {
            out.push(v);
        }
        k += 1;
    }
    out.push(hi);
    out
}

/// Built-in pass/fail contract for the extremal pairings whose slopes are
/// known to be attained; `None` elsewhere and at log endpoints.
pub fn default_contract(family: &FamilyTemplate, target: &RestrictionTarget, p: f64) -> Option<Contract> {
    let th = target.exponent(p).ok()?;
    if th.log_endpoint {
        return None;
    }
    let with = |tol: f64| {
        Some(Contract {
            theoretical: th.value,
            tolerance: tol,
        })
    };
    match (family, target) {
        (FamilyTemplate::Harmonic(HarmonicSpec::HighestWeight { d: 2, .. }), RestrictionTarget::Curve(c))
            if !c.is_curved() && p < 4.0 =>
        {
            with(0.02)
        }
        (FamilyTemplate::Harmonic(HarmonicSpec::Zonal { d: 2, pole, .. }), RestrictionTarget::Curve(c))
            if p > 4.0 && pole_on_curve(pole, c) =>
        {
            with(0.03)
        }
        (FamilyTemplate::TurningPoint, RestrictionTarget::Curve(c)) if c.is_curved() && p == 2.0 => {
            with(0.03)
        }
        (FamilyTemplate::Harmonic(HarmonicSpec::Zonal { d: 3, pole, .. }), RestrictionTarget::Subsphere(s))
            if p > 3.0 && pole_on_subsphere(pole, s) =>
        {
            with(0.04)
        }
        _ => None,
    }
}

fn unit(v: &[f64]) -> Option<Vec<f64>> {
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    (n > 0.0).then(|| v.iter().map(|a| a / n).collect())
}

fn pole_on_curve(pole: &[f64], c: &CurveSpec) -> bool {
    match unit(pole) {
        Some(u) if u.len() == 3 => (dot(&u, &c.axis()) - c.colatitude().cos()).abs() < 1e-9,
        _ => false,
    }
}

fn pole_on_subsphere(pole: &[f64], s: &GreatSubsphere) -> bool {
    match unit(pole) {
        Some(u) if u.len() == 4 => {
            let proj: f64 = s.frame().iter().map(|e| dot(&u, e).powi(2)).sum();
            (proj - 1.0).abs() < 1e-9
        }
        _ => false,
    }
}

/// Envelope ratio(n) ≤ C·λ^{e+slack}, with C calibrated on the first sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCheck {
    pub exponent: f64,
    pub slack: f64,
    pub constant: f64,
    /// max over samples of ratio / (C·λ^{e+slack}); at most 1 on success.
    pub worst: f64,
    pub verdict: Verdict,
}

pub fn envelope_check(samples: &[NormSample], exponent: f64, slack: f64) -> Result<EnvelopeCheck> {
    let first = samples
        .first()
        .ok_or_else(|| invalid("samples", "empty sweep"))?;
    let e = exponent + slack;
    let constant = first.ratio / first.lambda.powf(e);
    let worst = samples
        .iter()
        .map(|s| s.ratio / (constant * s.lambda.powf(e)))
        .fold(0.0, f64::max);
    Ok(EnvelopeCheck {
        exponent,
        slack,
        constant,
        worst,
        verdict: Verdict::from_check(worst <= 1.0 + 1e-12),
    })
}

/// Convenience wrapper: the assoc harmonic at the turning order.
pub fn turning_point_harmonic(n: usize, colatitude: f64) -> Result<AssocHarmonic> {
    AssocHarmonic::new(n, turning_point_order(n, colatitude) as i64)
}

#[cfg(test)]
mod tests;
