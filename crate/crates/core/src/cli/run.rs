use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{ConfigError, ExperimentConfig, ExperimentKind, FamilyName, TargetName};
use super::output::{loglog_svg, write_csv, Cell, Series};
use crate::error::Error;
use crate::geometry::{CurveSpec, GreatSubsphere};
use crate::harmonics::HarmonicSpec;
use crate::oscillatory::{airy_sweep, phase_expansion_fit, verify_kernel_bound, KernelSpec, DEFAULT_STEPS};
use crate::restriction::{
    default_contract, envelope_check, fit_exponent, sweep, theoretical_exponent, FamilyTemplate,
    RestrictionTarget, Verdict,
};
use crate::torus::{divisor_growth, verify_linfty_bound, TorusCurve, DEFAULT_LADDER};

/// Slack added to the sharp exponent for the envelope check.
pub const ENVELOPE_SLACK: f64 = 0.02;
/// Default (t, τ) lattice size for the kernel experiment.
pub const KERNEL_GRID: usize = 41;
/// Default seeds per N for the torus experiment.
pub const TORUS_SAMPLES: usize = 8;
/// Default output directory.
pub const DEFAULT_OUT: &str = "results";

/// Tolerances of the phase-expansion check.
const PHASE_TOL_CURVED: f64 = 1e-6;
const PHASE_TOL_GEODESIC: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedVerdict {
    pub check: String,
    pub verdict: Verdict,
}

/// Everything an experiment produced, before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub kind: ExperimentKind,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub report: Value,
    pub verdicts: Vec<NamedVerdict>,
    pub plot: Option<(String, String, Vec<Series>)>,
}

impl Outcome {
    pub fn verdict(&self) -> Verdict {
        if self.verdicts.iter().any(|v| v.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.verdicts.iter().any(|v| v.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::NoContract
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(ConfigError),
    Numerical(Error),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { name, reason } => RunError::Config(ConfigError::new(name, reason)),
            other => RunError::Numerical(other),
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => e.fmt(f),
            RunError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

fn need<T: Clone>(v: &Option<T>, field: &str) -> Result<T, ConfigError> {
    v.clone().ok_or_else(|| ConfigError::missing(field))
}

fn named(check: impl Into<String>, verdict: Verdict) -> NamedVerdict {
    NamedVerdict {
        check: check.into(),
        verdict,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Runs the configured experiment without touching the filesystem.
pub fn execute(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    match need(&cfg.experiment, "experiment")? {
        ExperimentKind::Sweep => run_sweep(cfg),
        ExperimentKind::Kernel => run_kernel(cfg),
        ExperimentKind::Phase => run_phase(cfg),
        ExperimentKind::Airy => run_airy(cfg),
        ExperimentKind::Torus => run_torus(cfg),
        ExperimentKind::OracleTable => run_oracle(cfg),
    }
}

fn curve_target(cfg: &ExperimentConfig) -> Result<CurveSpec, ConfigError> {
    match need(&cfg.curve, "curve")? {
        TargetName::Equator => Ok(CurveSpec::equator()),
        TargetName::Latitude => CurveSpec::latitude(need(&cfg.colatitude, "colatitude")?)
            .map_err(|e| ConfigError::new("colatitude", e.to_string())),
        TargetName::GreatSubsphere => Err(ConfigError::new("curve", "this experiment needs a curve on S²")),
    }
}

fn restriction_target(cfg: &ExperimentConfig) -> Result<RestrictionTarget, ConfigError> {
    match need(&cfg.curve, "curve")? {
        TargetName::GreatSubsphere => Ok(RestrictionTarget::Subsphere(GreatSubsphere::standard())),
        _ => curve_target(cfg).map(RestrictionTarget::Curve),
    }
}

fn family_template(
    cfg: &ExperimentConfig,
    target: &RestrictionTarget,
    n0: usize,
) -> Result<FamilyTemplate, ConfigError> {
    let (d, _, _) = target.signature();
    let spec = match need(&cfg.family, "family")? {
        FamilyName::TurningPoint => return Ok(FamilyTemplate::TurningPoint),
        FamilyName::HighestWeight => HarmonicSpec::HighestWeight { d, n: n0 },
        FamilyName::Zonal => {
            let pole = match (&cfg.pole, target) {
                (Some(p), _) => p.clone(),
                (None, RestrictionTarget::Curve(c)) => c.point(0.0).coords().to_vec(),
                (None, RestrictionTarget::Subsphere(s)) => s.pole().coords().to_vec(),
            };
            HarmonicSpec::Zonal { d, n: n0, pole }
        }
        FamilyName::AssocLegendre => HarmonicSpec::AssocLegendre {
            n: n0,
            m: need(&cfg.m, "m")?,
        },
        FamilyName::Averaged => HarmonicSpec::Averaged {
            n: n0,
            delta: need(&cfg.delta, "delta")?,
            bump: cfg.bump.unwrap_or_default(),
        },
    };
    if spec.dim() != d {
        return Err(ConfigError::new("family", format!("family lives on S^{} but the target is in S^{d}", spec.dim())));
    }
    spec.build().map_err(|e| ConfigError::new("family", e.to_string()))?;
    Ok(FamilyTemplate::Harmonic(spec))
}

fn run_sweep(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let target = restriction_target(cfg)?;
    let p = need(&cfg.p, "p")?.0;
    if p.is_nan() || p < 2.0 {
        return Err(ConfigError::new("p", format!("{p} is not in [2, ∞]")).into());
    }
    let degrees = need(&cfg.degrees, "degrees")?.expand();
    let n0 = *degrees.first().ok_or_else(|| ConfigError::new("degrees", "empty"))?;
    let family = family_template(cfg, &target, n0)?;
    let samples = sweep(&family, &target, p, &degrees, cfg.grid)?;
    let theory = target.exponent(p)?;
    let contract = default_contract(&family, &target, p);
    let fit = fit_exponent(
        &samples,
        contract.map(|c| c.theoretical),
        contract.map(|c| c.tolerance),
    )?;
    let envelope = if theory.log_endpoint {
        None
    } else {
        Some(envelope_check(&samples, theory.value, ENVELOPE_SLACK)?)
    };
    let mut verdicts = vec![named("slope", fit.verdict)];
    verdicts.push(named("envelope", envelope.map_or(Verdict::NoContract, |e| e.verdict)));
    let rows = samples
        .iter()
        .map(|s| {
            vec![
                Cell::Int(s.n as u64),
                Cell::Float(s.lambda),
                Cell::Float(s.p),
                Cell::Float(s.restricted_norm),
                Cell::Float(s.ambient_norm),
                Cell::Float(s.ratio),
            ]
        })
        .collect();
    let series = vec![Series {
        name: "ratio".into(),
        points: samples.iter().map(|s| (s.lambda, s.ratio)).collect(),
    }];
    Ok(Outcome {
        kind: ExperimentKind::Sweep,
        header: vec!["n", "lambda", "p", "restricted_norm", "ambient_norm", "ratio"],
        rows,
        report: json!({
            "samples": to_value(&samples),
            "theoretical": to_value(&theory),
            "fit": to_value(&fit),
            "envelope": to_value(&envelope),
        }),
        verdicts,
        plot: Some(("lambda".into(), "restricted / ambient".into(), series)),
    })
}

fn run_kernel(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let curve = curve_target(cfg)?;
    let lambdas = need(&cfg.lambdas, "lambdas")?;
    if lambdas.iter().any(|l| !(*l > 0.0)) {
        return Err(ConfigError::new("lambdas", "frequencies must be positive").into());
    }
    let base = KernelSpec::new(curve, lambdas[0]);
    let report = verify_kernel_bound(&base, &lambdas, cfg.grid.unwrap_or(KERNEL_GRID))?;
    let rows = report
        .lambdas
        .iter()
        .zip(&report.sup_scaled)
        .map(|(l, s)| vec![Cell::Float(*l), Cell::Float(*s)])
        .collect();
    let series = vec![Series {
        name: "sup |K|(1+λ|t−τ|)^½".into(),
        points: report.lambdas.iter().copied().zip(report.sup_scaled.iter().copied()).collect(),
    }];
    Ok(Outcome {
        kind: ExperimentKind::Kernel,
        header: vec!["lambda", "sup_scaled"],
        rows,
        verdicts: vec![named("ratios", report.verdict)],
        report: to_value(&report),
        plot: Some(("lambda".into(), "scaled kernel sup".into(), series)),
    })
}

fn run_phase(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let thetas = need(&cfg.theta0, "theta0")?;
    let tau = cfg.tau.unwrap_or(0.0);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut ok = true;
    for &th in &thetas {
        let curve = CurveSpec::latitude(th).map_err(|e| ConfigError::new("theta0", e.to_string()))?;
        let c_hat = phase_expansion_fit(&curve, tau, &DEFAULT_STEPS)?;
        let geodesic = (th - FRAC_PI_2).abs() < 1e-12;
        let c_theory = if geodesic { 0.0 } else { (th.cos() / th.sin()).powi(2) / 24.0 };
        let tol = if geodesic { PHASE_TOL_GEODESIC } else { PHASE_TOL_CURVED };
        let pass = (c_hat - c_theory).abs() <= tol;
        ok &= pass;
        rows.push(vec![Cell::Float(th), Cell::Float(c_hat), Cell::Float(c_theory)]);
        entries.push(json!({
            "theta0": th,
            "c_hat": c_hat,
            "c_theory": c_theory,
            "tolerance": tol,
            "verdict": Verdict::from_check(pass),
        }));
    }
    Ok(Outcome {
        kind: ExperimentKind::Phase,
        header: vec!["theta0", "c_hat", "c_theory"],
        rows,
        report: json!({ "tau": tau, "steps": DEFAULT_STEPS, "fits": entries }),
        verdicts: vec![named("expansion constant", Verdict::from_check(ok))],
        plot: None,
    })
}

fn run_airy(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let case = need(&cfg.airy_case, "airy_case")?;
    let lambdas = need(&cfg.lambdas, "lambdas")?;
    if lambdas.iter().any(|l| !(*l > 0.0)) {
        return Err(ConfigError::new("lambdas", "frequencies must be positive").into());
    }
    let report = airy_sweep(case, &lambdas)?;
    let rows = report
        .lambdas
        .iter()
        .zip(&report.norms)
        .map(|(l, s)| vec![Cell::Float(*l), Cell::Float(*s)])
        .collect();
    let series = vec![Series {
        name: "operator norm".into(),
        points: report.lambdas.iter().copied().zip(report.norms.iter().copied()).collect(),
    }];
    Ok(Outcome {
        kind: ExperimentKind::Airy,
        header: vec!["lambda", "opnorm"],
        rows,
        verdicts: vec![named("slope", report.verdict)],
        report: to_value(&report),
        plot: Some(("lambda".into(), "operator norm".into(), series)),
    })
}

fn run_torus(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let ns = match (&cfg.ns, cfg.n_max) {
        (Some(ns), _) => ns.clone(),
        (None, Some(max)) => DEFAULT_LADDER.iter().copied().filter(|&n| n <= max).collect(),
        (None, None) => return Err(ConfigError::new("ns", "give `ns` or `n_max`").into()),
    };
    let seed = cfg.seed.unwrap_or(0);
    let samples = cfg.samples.unwrap_or(TORUS_SAMPLES);
    if samples == 0 {
        return Err(ConfigError::new("samples", "must be positive").into());
    }
    let seeds: Vec<u64> = (0..samples as u64).map(|k| seed + k).collect();
    let curves = TorusCurve::defaults();
    let mut verdicts = Vec::new();
    let mut rows = Vec::new();
    let mut plot = None;
    let report = if ns.is_empty() {
        None
    } else {
        let r = verify_linfty_bound(&ns, &seeds, cfg.grid, &curves)?;
        verdicts.push(named("sup bound and slope", r.verdict));
        rows = r
            .rows
            .iter()
            .map(|row| {
                vec![
                    Cell::Int(row.n),
                    Cell::Int(row.r2 as u64),
                    Cell::Float(row.sup),
                    Cell::Float(row.curve_l2),
                    Cell::Int(row.seed),
                ]
            })
            .collect();
        plot = Some((
            "sqrt(N)".into(),
            "mean sup |f|".into(),
            vec![Series {
                name: "mean sup".into(),
                points: ns.iter().map(|&n| (n as f64).sqrt()).zip(r.mean_sup.iter().copied()).collect(),
            }],
        ));
        Some(r)
    };
    let growth = cfg.n_max.map(divisor_growth).transpose()?;
    if let Some(g) = &growth {
        let v = if g.tail_maxima.len() >= 2 {
            Verdict::from_check(g.decreasing)
        } else {
            Verdict::NoContract
        };
        verdicts.push(named("growth tail maxima", v));
    }
    Ok(Outcome {
        kind: ExperimentKind::Torus,
        header: vec!["N", "r2", "sup", "curve_l2", "seed"],
        rows,
        report: json!({ "linfty": to_value(&report), "divisor_growth": to_value(&growth) }),
        verdicts,
        plot,
    })
}

fn run_oracle(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let pairs: Vec<(usize, usize, bool)> = match (cfg.d, cfg.k) {
        (Some(d), Some(k)) if (d, k) == (2, 1) => vec![(2, 1, false), (2, 1, true)],
        (Some(d), Some(k)) => vec![(d, k, false)],
        (None, None) => vec![(2, 1, false), (2, 1, true), (3, 1, false), (3, 2, false)],
        (None, _) => return Err(ConfigError::missing("d").into()),
        (_, None) => return Err(ConfigError::missing("k").into()),
    };
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for (d, k, curved) in pairs {
        let p0 = 2.0 * d as f64 / (d as f64 - 1.0);
        let mut ps = vec![2.0, p0, 4.0, 6.0, f64::INFINITY];
        ps.sort_by(f64::total_cmp);
        ps.dedup();
        for p in ps {
            let e = theoretical_exponent(d, k, p, curved)?;
            rows.push(vec![
                Cell::Int(d as u64),
                Cell::Int(k as u64),
                Cell::Bool(curved),
                Cell::Float(p),
                Cell::Float(e.value),
                Cell::Bool(e.log_endpoint),
            ]);
            table.push(json!({
                "d": d,
                "k": k,
                "curved": curved,
                "p": if p.is_infinite() { json!("inf") } else { json!(p) },
                "exponent": e.value,
                "log_endpoint": e.log_endpoint,
            }));
        }
    }
    Ok(Outcome {
        kind: ExperimentKind::OracleTable,
        header: vec!["d", "k", "curved", "p", "exponent", "log_endpoint"],
        rows,
        report: Value::Array(table),
        verdicts: vec![],
        plot: None,
    })
}

/// Files written by [`write_artifacts`].
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub csv: Option<PathBuf>,
    pub summary: PathBuf,
    pub plot: Option<PathBuf>,
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::NoContract => "no_contract",
    }
}

/// Runs and writes `<experiment>.csv`, `summary.json` and, on request,
/// `<experiment>.svg`. Returns the exit code: 0 when nothing failed,
/// 1 on a failed contract or numerical error, 2 on a bad config.
pub fn run(cfg: &ExperimentConfig) -> (i32, Option<Artifacts>) {
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let summary_path = out.join("summary.json");
    let write = |name: &PathBuf, body: &str| -> std::io::Result<()> {
        std::fs::create_dir_all(&out)?;
        std::fs::write(name, body)
    };
    let config_value = to_value(cfg);
    let experiment = cfg.experiment.map(|k| k.name());
    let result = execute(cfg);
    let (code, body, artifacts) = match result {
        Ok(outcome) => {
            let v = outcome.verdict();
            let name = outcome.kind.name();
            let csv_path = out.join(format!("{name}.csv"));
            let csv = write_csv(&outcome.header, &outcome.rows);
            if let Err(e) = write(&csv_path, &csv) {
                eprintln!("cannot write {}: {e}", csv_path.display());
                return (2, None);
            }
            let mut plot_path = None;
            if cfg.plot.unwrap_or(false) {
                if let Some((xl, yl, series)) = &outcome.plot {
                    let p = out.join(format!("{name}.svg"));
                    if let Err(e) = write(&p, &loglog_svg(name, xl, yl, series)) {
                        eprintln!("cannot write {}: {e}", p.display());
                        return (2, None);
                    }
                    plot_path = Some(p);
                }
            }
            let body = json!({
                "experiment": name,
                "config": config_value,
                "verdict": verdict_word(v),
                "checks": to_value(&outcome.verdicts),
                "report": outcome.report,
            });
            for c in &outcome.verdicts {
                eprintln!("{name}: {} -> {}", c.check, verdict_word(c.verdict));
            }
            let code = if v == Verdict::Fail { 1 } else { 0 };
            (
                code,
                body,
                Some(Artifacts {
                    csv: Some(csv_path),
                    summary: summary_path.clone(),
                    plot: plot_path,
                }),
            )
        }
        Err(e) => {
            eprintln!("{e}");
            let (code, field) = match &e {
                RunError::Config(c) => (2, Some(c.field.clone())),
                RunError::Numerical(_) => (1, None),
            };
            let body = json!({
                "experiment": experiment,
                "config": config_value,
                "verdict": "fail",
                "error": e.to_string(),
                "field": field,
            });
            (
                code,
                body,
                Some(Artifacts {
                    csv: None,
                    summary: summary_path.clone(),
                    plot: None,
                }),
            )
        }
    };
    let text = serde_json::to_string_pretty(&body).expect("summary serializes") + "\n";
    if let Err(e) = write(&summary_path, &text) {
        eprintln!("cannot write {}: {e}", summary_path.display());
        return (2, None);
    }
    (code, artifacts)
}
