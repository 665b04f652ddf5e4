use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harmonics::{LatticePoint, TorusSum};

/// All (m, n) ∈ ℤ² with m² + n² = N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRepresentations {
    pub n: u64,
    pub points: Vec<(i64, i64)>,
    /// Set only for N = 0, where the "circle" is the origin.
    pub degenerate: bool,
}

impl CircleRepresentations {
    pub fn r2(&self) -> usize {
        self.points.len()
    }
}

/// Largest s with s² ≤ v.
pub(crate) fn isqrt(v: u64) -> u64 {
    let mut s = (v as f64).sqrt() as u64;
    while s * s > v {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= v {
        s += 1;
    }
    s
}

/// Scans m ∈ [−⌊√N⌋, ⌊√N⌋] and keeps N − m² when it is a perfect square.
/// Points come out ordered by m, then n.
pub fn representations(n: u64) -> CircleRepresentations {
    if n == 0 {
        return CircleRepresentations {
            n,
            points: vec![(0, 0)],
            degenerate: true,
        };
    }
    let r = isqrt(n) as i64;
    let mut points = Vec::new();
    for m in -r..=r {
        let rest = n - (m * m) as u64;
        let s = isqrt(rest);
        if s * s == rest {
            let s = s as i64;
            points.push((m, -s));
            if s != 0 {
                points.push((m, s));
            }
        }
    }
    CircleRepresentations {
        n,
        points,
        degenerate: false,
    }
}

/// r₂(N) for every N ≤ `n_max`, by a double loop over a, b ≥ 0 with
/// a² + b² ≤ `n_max`. Independent of [`representations`].
pub fn r2_table(n_max: u64) -> Vec<u32> {
    let mut counts = vec![0u32; n_max as usize + 1];
    let mut a = 0u64;
    while a * a <= n_max {
        let mut b = 0u64;
        while a * a + b * b <= n_max {
            let mult = if a > 0 { 2 } else { 1 } * if b > 0 { 2 } else { 1 };
            counts[(a * a + b * b) as usize] += mult;
            b += 1;
        }
        a += 1;
    }
    counts
}

/// Largest N accepted by [`divisor_growth`].
pub const GROWTH_LIMIT: u64 = 10_000_000;

/// One N of the growth table: exponent = log r₂ / log √N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: u64,
    pub r2: u32,
    pub exponent: f64,
}

/// max exponent over N ∈ [cutoff, N_max].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailMaximum {
    pub cutoff: u64,
    pub max_exponent: f64,
    pub at: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorGrowth {
    pub n_max: u64,
    /// N where r₂ reaches a new maximum.
    pub records: Vec<GrowthRow>,
    /// Cutoffs 10³, 10⁴, … up to N_max.
    pub tail_maxima: Vec<TailMaximum>,
    /// True when the tail maxima are non-increasing in the cutoff.
    pub decreasing: bool,
}

fn exponent(n: u64, r2: u32) -> f64 {
    2.0 * (r2 as f64).ln() / (n as f64).ln()
}

/// Tabulates r₂ up to `n_max` with record holders and tail maxima of the
/// normalized exponent.
pub fn divisor_growth(n_max: u64) -> Result<DivisorGrowth> {
    if !(2..=GROWTH_LIMIT).contains(&n_max) {
        return Err(invalid("n_max", format!("{n_max} not in [2, {GROWTH_LIMIT}]")));
    }
    let table = r2_table(n_max);
    let mut records = Vec::new();
    let mut best = 0;
    for (n, &r) in table.iter().enumerate().skip(2) {
        if r > best {
            best = r;
            records.push(GrowthRow {
                n: n as u64,
                r2: r,
                exponent: exponent(n as u64, r),
            });
        }
    }
    let cutoffs: Vec<u64> = (3..)
        .map(|k| 10u64.pow(k))
        .take_while(|&c| c <= n_max)
        .collect();
    // one backward pass gives every suffix maximum
    let mut tail_maxima = Vec::with_capacity(cutoffs.len());
    let (mut m, mut at) = (f64::NEG_INFINITY, 0);
    let mut next = cutoffs.len();
    for n in (2..=n_max).rev() {
        let r = table[n as usize];
        if r > 0 {
            let e = exponent(n, r);
            if e > m {
                m = e;
                at = n;
            }
        }
        if next > 0 && n == cutoffs[next - 1] {
            next -= 1;
            tail_maxima.push(TailMaximum {
                cutoff: n,
                max_exponent: m,
                at,
            });
        }
    }
    tail_maxima.reverse();
    let decreasing = tail_maxima
        .windows(2)
        .all(|w| w[1].max_exponent <= w[0].max_exponent);
    Ok(DivisorGrowth {
        n_max,
        records,
        tail_maxima,
        decreasing,
    })
}

fn build(n: u64, coeffs: impl Fn(usize) -> Complex64) -> Result<TorusSum> {
    let reps = representations(n);
    if reps.points.is_empty() {
        return Err(Error::EmptyCircle(n));
    }
    let terms = reps
        .points
        .iter()
        .enumerate()
        .map(|(k, &(m, n))| LatticePoint {
            m,
            n,
            coefficient: coeffs(k),
        })
        .collect();
    TorusSum::new(terms)
}

/// Eigenfunction on m² + n² = N with unimodular coefficients of uniform
/// random phase (ChaCha8 seeded by `seed`), scaled so Σ|c|² = 1.
pub fn random_eigenfunction(n: u64, seed: u64) -> Result<TorusSum> {
    let r2 = representations(n).r2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phases: Vec<f64> = (0..r2)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    let s = 1.0 / (r2 as f64).sqrt();
    build(n, |k| Complex64::from_polar(s, phases[k]))
}

/// All coefficients 1/√r₂; peaks at the origin with value √r₂.
pub fn uniform_eigenfunction(n: u64) -> Result<TorusSum> {
    let r2 = representations(n).r2();
    build(n, |_| Complex64::new(1.0 / (r2 as f64).sqrt(), 0.0))
}
