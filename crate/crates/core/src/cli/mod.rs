//! Command-line experiment runner: `run` executes one experiment from a
//! TOML config and/or flags, `list` prints the catalog.

mod config;
mod output;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{ConfigError, Degrees, ExperimentConfig, ExperimentKind, Exponent, FamilyName, TargetName};
pub use output::{fmt_float, loglog_svg, write_csv, Cell, Series};
pub use run::{
    execute, run, Artifacts, NamedVerdict, Outcome, RunError, DEFAULT_OUT, ENVELOPE_SLACK,
    KERNEL_GRID, TORUS_SAMPLES,
};

use config::{parse_list, parse_name, parse_p};

#[derive(Debug, Parser)]
#[command(name = "eigenrestrict", version, about = "Eigenfunction restriction experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment.
    Run(RunArgs),
    /// List the available experiments.
    List,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// TOML config; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// sweep, kernel, phase, airy, torus or oracle-table.
    #[arg(long)]
    pub experiment: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG log-log plot.
    #[arg(long)]
    pub plot: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// zonal, assoc_legendre, highest_weight, averaged or turning_point.
    #[arg(long)]
    pub family: Option<String>,
    /// equator, latitude or great_subsphere.
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub colatitude: Option<f64>,
    /// Exponent in [2, ∞]; "inf" for the sup norm.
    #[arg(long)]
    pub p: Option<String>,
    /// Degree range lo:hi (geometric ratio √2).
    #[arg(long)]
    pub degrees: Option<String>,
    /// Comma-separated frequencies.
    #[arg(long)]
    pub lambda_list: Option<String>,
    #[arg(long)]
    pub n_max: Option<u64>,
}

impl RunArgs {
    /// Loads the config file (if any) and applies the flags on top.
    pub fn resolve(&self) -> Result<ExperimentConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(e) = &self.experiment {
            cfg.experiment = Some(parse_name("experiment", e)?);
        }
        if let Some(f) = &self.family {
            cfg.family = Some(parse_name("family", f)?);
        }
        if let Some(c) = &self.curve {
            cfg.curve = Some(parse_name("curve", c)?);
        }
        if let Some(p) = &self.p {
            cfg.p = Some(parse_p(p)?);
        }
        if let Some(d) = &self.degrees {
            cfg.degrees = Some(d.parse().map_err(|e| ConfigError::new("degrees", e))?);
        }
        if let Some(l) = &self.lambda_list {
            cfg.lambdas = Some(parse_list("lambdas", l)?);
        }
        if self.colatitude.is_some() {
            cfg.colatitude = self.colatitude;
        }
        if self.seed.is_some() {
            cfg.seed = self.seed;
        }
        if self.n_max.is_some() {
            cfg.n_max = self.n_max;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if self.plot {
            cfg.plot = Some(true);
        }
        Ok(cfg)
    }
}

/// (name, what it checks), in display order.
pub const CATALOG: [(&str, &str); 6] = [
    (
        "sweep",
        "growth of restricted L^p norms of harmonic families on curves and great 2-spheres against the sharp exponent",
    ),
    ("kernel", "(1 + λ|t − τ|)^{-1/2} decay of the averaged oscillatory kernel along a curve"),
    ("phase", "cubic term κ²/24 in the expansion of distance along a curve"),
    ("airy", "λ^{-2/3} operator bound for the Airy-type model operator"),
    ("torus", "lattice-point growth on circles and sup norms of flat-torus eigenfunctions"),
    ("oracle-table", "sharp restriction exponents by dimension, codimension and p, with log endpoints"),
];

pub fn list_experiments() -> String {
    let width = CATALOG.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    CATALOG
        .iter()
        .map(|(n, d)| format!("{n:<width$}  {d}\n"))
        .collect()
}

/// Parses `args` (including the program name) and runs; returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.command {
        Command::List => {
            print!("{}", list_experiments());
            0
        }
        Command::Run(a) => match a.resolve() {
            Ok(cfg) => {
                let (code, artifacts) = run(&cfg);
                if let Some(a) = artifacts {
                    println!("{}", a.summary.display());
                }
                code
            }
            Err(e) => {
                eprintln!("{e}");
                2
            }
        },
    }
}
