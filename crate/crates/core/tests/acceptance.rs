//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
use std::time::{Duration, Instant};

use eigenrestrict::geometry::{
    distance_gradient_check, exp_map, sphere_distance, tangent_frame, CurveKind, CurveSpec,
    GreatSubsphere, UnitVector,
};
use eigenrestrict::harmonics::HarmonicSpec;
use eigenrestrict::oscillatory::{
    airy_sweep, critical_points, phase_difference, phase_expansion_fit, verify_kernel_bound,
    AiryCase, KernelSpec, DEFAULT_STEPS,
};
use eigenrestrict::restriction::{
    envelope_check, fit_exponent, geometric_degrees, sweep, theoretical_exponent, FamilyTemplate,
    NormSample, RestrictionTarget, Verdict,
};
use eigenrestrict::torus::{
    r2_table, random_eigenfunction, representations, sup_norm, torus_grid_floor,
    verify_linfty_bound, TorusCurve, DEFAULT_LADDER,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(bool, String), String>;

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn harmonic(spec: HarmonicSpec) -> FamilyTemplate {
    FamilyTemplate::Harmonic(spec)
}

fn equator() -> RestrictionTarget {
    RestrictionTarget::Curve(CurveSpec::equator())
}

fn run_sweep(
    f: &FamilyTemplate,
    t: &RestrictionTarget,
    p: f64,
    degrees: &[usize],
) -> Result<Vec<NormSample>, String> {
    sweep(f, t, p, degrees, None).map_err(err)
}

fn slope_check(samples: &[NormSample], target: f64, tol: f64) -> Result<(bool, f64), String> {
    let fit = fit_exponent(samples, Some(target), Some(tol)).map_err(err)?;
    Ok((fit.verdict == Verdict::Pass, fit.slope))
}

fn geodesic_sharpness() -> Check {
    let f = harmonic(HarmonicSpec::HighestWeight { d: 2, n: 16 });
    let s = run_sweep(&f, &equator(), 2.0, &geometric_degrees(16, 256))?;
    let (ok, slope) = slope_check(&s, 0.25, 0.02)?;
    Ok((ok, format!("slope {slope:.4}, want 0.25 ± 0.02")))
}

fn zonal_sharpness() -> Check {
    let f = harmonic(HarmonicSpec::Zonal { d: 2, n: 16, pole: vec![1.0, 0.0, 0.0] });
    let deg = geometric_degrees(16, 256);
    let (a, sa) = slope_check(&run_sweep(&f, &equator(), f64::INFINITY, &deg)?, 0.5, 0.03)?;
    let (b, sb) = slope_check(&run_sweep(&f, &equator(), 6.0, &deg)?, 1.0 / 3.0, 0.03)?;
    Ok((
        a && b,
        format!("p=inf slope {sa:.4} (0.5 ± 0.03), p=6 slope {sb:.4} (1/3 ± 0.03)"),
    ))
}

fn curved_improvement() -> Check {
    let t = RestrictionTarget::Curve(CurveSpec::latitude(FRAC_PI_4).map_err(err)?);
    let s = run_sweep(&FamilyTemplate::TurningPoint, &t, 2.0, &geometric_degrees(32, 512))?;
    let (ok, slope) = slope_check(&s, 1.0 / 6.0, 0.03)?;
    Ok((ok, format!("slope {slope:.4}, want 1/6 ± 0.03")))
}

fn envelope() -> Check {
    let lat = RestrictionTarget::Curve(CurveSpec::latitude(FRAC_PI_4).map_err(err)?);
    let sub = RestrictionTarget::Subsphere(GreatSubsphere::standard());
    let hw = harmonic(HarmonicSpec::HighestWeight { d: 2, n: 16 });
    let zon = harmonic(HarmonicSpec::Zonal { d: 2, n: 16, pole: vec![1.0, 0.0, 0.0] });
    let zoff = harmonic(HarmonicSpec::Zonal { d: 2, n: 16, pole: vec![0.0, 0.0, 1.0] });
    let zlat = harmonic(HarmonicSpec::Zonal {
        d: 2,
        n: 16,
        pole: vec![FRAC_PI_4.sin(), 0.0, FRAC_PI_4.cos()],
    });
    let z3 = harmonic(HarmonicSpec::Zonal { d: 3, n: 16, pole: vec![0.0, 0.0, 1.0, 0.0] });
    let tp = FamilyTemplate::TurningPoint;
    let d = geometric_degrees(16, 256);
    // the off-curve zonal vanishes on the equator at odd degree
    let even = vec![16, 24, 32, 46, 64, 92, 128, 182, 256];
    let inf = f64::INFINITY;
    let matrix: Vec<(&str, &FamilyTemplate, RestrictionTarget, f64, Vec<usize>)> = vec![
        ("highest weight/equator/2", &hw, equator(), 2.0, d.clone()),
        ("highest weight/equator/6", &hw, equator(), 6.0, d.clone()),
        ("zonal/equator/2", &zon, equator(), 2.0, d.clone()),
        ("zonal/equator/6", &zon, equator(), 6.0, d.clone()),
        ("zonal/equator/inf", &zon, equator(), inf, d.clone()),
        ("off-curve zonal/equator/2", &zoff, equator(), 2.0, even),
        ("turning point/latitude/2", &tp, lat, 2.0, geometric_degrees(32, 512)),
        ("zonal/latitude/inf", &zlat, lat, inf, d.clone()),
        ("zonal/great 2-sphere/4", &z3, sub, 4.0, d.clone()),
        ("zonal/great 2-sphere/inf", &z3, sub, inf, geometric_degrees(16, 128)),
    ];
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, f, t, p, deg) in &matrix {
        let th = t.exponent(*p).map_err(err)?;
        let s = run_sweep(f, t, *p, deg)?;
        let e = envelope_check(&s, th.value, 0.02).map_err(err)?;
        worst = worst.max(e.worst);
        if e.verdict != Verdict::Pass {
            bad.push(format!("{name} ({:.4})", e.worst));
        }
    }
    let over = if bad.is_empty() {
        String::new()
    } else {
        format!("; over: {}", bad.join(", "))
    };
    Ok((
        bad.is_empty(),
        format!("{} sweeps, worst sample/envelope {worst:.6}{over}", matrix.len()),
    ))
}

fn phase_expansion() -> Check {
    let mut worst_curved: f64 = 0.0;
    for th in [FRAC_PI_4, FRAC_PI_3] {
        let c = CurveSpec::latitude(th).map_err(err)?;
        let want = (th.cos() / th.sin()).powi(2) / 24.0;
        let got = phase_expansion_fit(&c, 0.7, &DEFAULT_STEPS).map_err(err)?;
        worst_curved = worst_curved.max((got - want).abs());
    }
    let tilted = CurveSpec::with_frame(CurveKind::GreatCircle, [0.3, -0.5, 0.8], [1.0, 0.0, 0.0])
        .map_err(err)?;
    let mut worst_geo: f64 = 0.0;
    for c in [CurveSpec::equator(), tilted] {
        let got = phase_expansion_fit(&c, 1.3, &DEFAULT_STEPS).map_err(err)?;
        worst_geo = worst_geo.max(got.abs());
    }
    Ok((
        worst_curved <= 1e-6 && worst_geo <= 1e-8,
        format!(
            "latitude error {worst_curved:.2e} (≤ 1e-6), great circle |ĉ| {worst_geo:.2e} (≤ 1e-8)"
        ),
    ))
}

fn kernel_decay() -> Check {
    let lambdas = [50.0, 100.0, 200.0, 400.0];
    let mut ok = true;
    let mut parts = Vec::new();
    let curves = [
        ("equator", CurveSpec::equator()),
        ("latitude π/3", CurveSpec::latitude(FRAC_PI_3).map_err(err)?),
    ];
    for (name, c) in curves {
        let r = verify_kernel_bound(&KernelSpec::new(c, lambdas[0]), &lambdas, 41).map_err(err)?;
        ok &= r.verdict == Verdict::Pass;
        let rs: Vec<String> = r.ratios.iter().map(|x| format!("{x:.3}")).collect();
        parts.push(format!("{name} ratios [{}]", rs.join(", ")));
    }
    Ok((ok, format!("{} (each in [0.5, 1.5])", parts.join("; "))))
}

fn random_unit(rng: &mut ChaCha8Rng) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return UnitVector::normalized(&v).unwrap();
        }
    }
}

fn unit_tangent(x: &UnitVector, angle: f64) -> Vec<f64> {
    let f = tangent_frame(x);
    (0..3)
        .map(|i| angle.cos() * f[0][i] + angle.sin() * f[1][i])
        .collect()
}

/// Golden-section search for the maximum of g on [a, b].
fn refine(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let x1 = b - r * (b - a);
        let x2 = a + r * (b - a);
        if g(x1) > g(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    (a + b) / 2.0
}

fn critical_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut dir_err, mut val_err): (f64, f64) = (0.0, 0.0);
    let grid = 4096;
    let h = 2.0 * PI / grid as f64;
    let gap = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(p, q)| (p - q).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    for _ in 0..100 {
        let xp = random_unit(&mut rng);
        let r = rng.gen_range(0.1..1.5);
        let d = r * rng.gen_range(0.05..0.95);
        let v: Vec<f64> = unit_tangent(&xp, rng.gen_range(0.0..2.0 * PI))
            .iter()
            .map(|c| d * c)
            .collect();
        let x = exp_map(&xp, &v).map_err(err)?;
        let cp = critical_points(&x, &xp, r).map_err(err)?;
        let phase = |w: f64| phase_difference(&x, &xp, r, &unit_tangent(&xp, w));
        let vals: Vec<f64> = (0..grid).map(|k| phase(k as f64 * h)).collect();
        let imax = (0..grid).max_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
        let imin = (0..grid).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
        let wmax = refine(&phase, (imax as f64 - 1.0) * h, (imax as f64 + 1.0) * h);
        let wmin = refine(&|w| -phase(w), (imin as f64 - 1.0) * h, (imin as f64 + 1.0) * h);
        dir_err = dir_err
            .max(gap(&unit_tangent(&xp, wmax), &cp.omega_star))
            .max(gap(&unit_tangent(&xp, wmin), &cp.omega_opposite));
        let dist = sphere_distance(&x, &xp).map_err(err)?;
        val_err = val_err
            .max((cp.phase_star - dist).abs())
            .max((cp.phase_opposite + dist).abs());
    }
    Ok((
        dir_err <= 1e-4 && val_err <= 1e-10,
        format!(
            "100 configurations: direction error {dir_err:.2e} (≤ 1e-4), value error {val_err:.2e} (≤ 1e-10)"
        ),
    ))
}

fn airy_bound() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for case in [AiryCase::Model, AiryCase::Variable] {
        let r = airy_sweep(case, &[200.0, 400.0, 800.0]).map_err(err)?;
        ok &= r.verdict == Verdict::Pass;
        parts.push(format!("{case:?} slope {:.4}", r.slope));
    }
    Ok((ok, format!("{} (want −2/3 ± 0.05)", parts.join(", "))))
}

fn gradient_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let xp = random_unit(&mut rng);
        let r = rng.gen_range(0.05..3.0);
        let omega = unit_tangent(&xp, rng.gen_range(0.0..2.0 * PI));
        worst = worst.max(distance_gradient_check(&xp, r, &omega).map_err(err)?);
    }
    Ok((worst < 1e-6, format!("max deviation {worst:.2e} over 100 draws (< 1e-6)")))
}

fn torus() -> Check {
    let table = r2_table(100_000);
    let mismatch = (1..=100_000u64).find(|&n| table[n as usize] as usize != representations(n).r2());
    let mut bound_ok = true;
    let mut count = 0;
    for n in [5u64, 25, 65, 85, 325] {
        let r2 = representations(n).r2() as f64;
        for seed in 0..200 {
            let f = random_eigenfunction(n, seed).map_err(err)?;
            let s = sup_norm(&f, torus_grid_floor(n)).map_err(err)?;
            bound_ok &= s <= r2.sqrt() * (1.0 + 1e-12);
            count += 1;
        }
    }
    let seeds: Vec<u64> = (0..8).collect();
    let report =
        verify_linfty_bound(&DEFAULT_LADDER, &seeds, None, &TorusCurve::defaults()).map_err(err)?;
    let slope = report.slope.unwrap_or(f64::NAN);
    Ok((
        mismatch.is_none() && bound_ok && slope <= 0.15,
        format!(
            "r2 scans agree up to 1e5: {}, sup ≤ √r2 for {count} eigenfunctions: {bound_ok}, ladder slope {slope:.4} (≤ 0.15)",
            mismatch.is_none()
        ),
    ))
}

fn oracle_table() -> Check {
    let inf = f64::INFINITY;
    // (d, k, curved, p, value, log endpoint)
    let rows: &[(usize, usize, bool, f64, f64, bool)] = &[
        (2, 1, false, 2.0, 0.25, false),
        (2, 1, false, 4.0, 0.25, true),
        (2, 1, false, 6.0, 1.0 / 3.0, false),
        (2, 1, false, inf, 0.5, false),
        (2, 1, true, 2.0, 1.0 / 6.0, false),
        (2, 1, true, 4.0, 0.25, true),
        (2, 1, true, 6.0, 1.0 / 3.0, false),
        (2, 1, true, inf, 0.5, false),
        (3, 2, false, 2.0, 0.25, false),
        (3, 2, false, 3.0, 1.0 / 3.0, true),
        (3, 2, false, 4.0, 0.5, false),
        (3, 2, false, 6.0, 2.0 / 3.0, false),
        (3, 2, false, inf, 1.0, false),
        (3, 1, false, 2.0, 0.5, true),
        (3, 1, false, 3.0, 2.0 / 3.0, false),
        (3, 1, false, 4.0, 0.75, false),
        (3, 1, false, 6.0, 5.0 / 6.0, false),
        (3, 1, false, inf, 1.0, false),
        (4, 3, false, 2.0, 0.25, false),
        (4, 3, false, 8.0 / 3.0, 0.375, true),
        (4, 3, false, 4.0, 0.75, false),
        (4, 3, false, 6.0, 1.0, false),
        (4, 3, false, inf, 1.5, false),
        (4, 2, false, 2.0, 0.5, true),
        (4, 2, false, 8.0 / 3.0, 0.75, false),
        (4, 2, false, 4.0, 1.0, false),
        (4, 2, false, 6.0, 7.0 / 6.0, false),
        (4, 2, false, inf, 1.5, false),
        (4, 1, false, 2.0, 1.0, false),
        (4, 1, false, 8.0 / 3.0, 9.0 / 8.0, false),
        (4, 1, false, 4.0, 1.25, false),
        (4, 1, false, 6.0, 4.0 / 3.0, false),
        (4, 1, false, inf, 1.5, false),
    ];
    let mut bad = Vec::new();
    for &(d, k, c, p, v, log) in rows {
        let e = theoretical_exponent(d, k, p, c).map_err(err)?;
        if (e.value - v).abs() > 1e-14 || e.log_endpoint != log {
            bad.push(format!("(d={d}, k={k}, curved={c}, p={p}): {} {}", e.value, e.log_endpoint));
        }
    }
    let wrong = if bad.is_empty() {
        String::new()
    } else {
        format!("; wrong: {}", bad.join("; "))
    };
    Ok((bad.is_empty(), format!("{} entries{wrong}", rows.len())))
}

fn hypersurface_s3() -> Check {
    let t = RestrictionTarget::Subsphere(GreatSubsphere::standard());
    let th = t.exponent(4.0).map_err(err)?;
    let f = harmonic(HarmonicSpec::Zonal { d: 3, n: 16, pole: vec![0.0, 0.0, 1.0, 0.0] });
    let s = run_sweep(&f, &t, 4.0, &geometric_degrees(16, 256))?;
    let (ok, slope) = slope_check(&s, th.value, 0.04)?;
    Ok((ok, format!("slope {slope:.4}, oracle {:.4} ± 0.04", th.value)))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 12] = [
        ("geodesic sharpness", minutes(1), geodesic_sharpness),
        ("zonal sharpness", minutes(2), zonal_sharpness),
        ("curved-curve improvement", minutes(10), curved_improvement),
        ("upper-bound envelope", minutes(10), envelope),
        ("phase expansion", Duration::from_secs(1), phase_expansion),
        ("kernel decay", minutes(5), kernel_decay),
        ("critical-point structure", minutes(5), critical_structure),
        ("airy bound", minutes(10), airy_bound),
        ("gradient identity", minutes(1), gradient_identity),
        ("torus", minutes(5), torus),
        ("oracle table", minutes(1), oracle_table),
        ("S3 hypersurface", minutes(10), hypersurface_s3),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let el = t.elapsed();
        let (ok, detail) = match result {
            Ok((ok, d)) => (ok && el <= *budget, d),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {detail} [{:.1}s, budget {}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            el.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
