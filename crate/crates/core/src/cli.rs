//! Command-line front end: `run`, `validate` and `gain`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::RowVector4;

use crate::config::{load_config, parse_controllers, parse_experiments, RunConfig};
use crate::control::{
    closed_loop_eigenvalue_magnitudes, lqr_gain, ControllerKind, GainSource, LqrConfig,
    PUBLISHED_GAIN,
};
use crate::error::Result;
use crate::harness::{export_all, format_comparison, format_summary, run_experiments, TransientRule};
use crate::plant::{discretize, linearize, Integrator};
use crate::validate::{all_passed, run_checks};

/// Exit code for configuration and runtime errors.
pub const EXIT_ERROR: i32 = 1;
/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when a self-check fails or a required episode does not settle.
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rshac", version, about = "Cart-pole benchmark for hedge-algebra, fuzzy and LQR controllers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiments, write CSV files and print the summary tables.
    Run(Options),
    /// Run the built-in self-checks against the configuration.
    Validate(Options),
    /// Print the published and computed LQR gains with their closed-loop eigenvalues.
    Gain(Options),
}

#[derive(Debug, Args)]
struct Options {
    /// exp1, exp2, all or custom.
    #[arg(long)]
    experiment: Option<String>,
    /// rshac, fc, lqr or all.
    #[arg(long)]
    controller: Option<String>,
    /// Configuration file; command-line flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// rk4 or euler.
    #[arg(long)]
    integrator: Option<String>,
    /// Dwell window of the settling test, in seconds.
    #[arg(long)]
    dwell: Option<f64>,
}

impl Options {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        if let Some(e) = &self.experiment {
            cfg.experiments = parse_experiments(e)?;
        }
        if let Some(c) = &self.controller {
            cfg.controllers = parse_controllers(c)?;
        }
        if let Some(o) = &self.out {
            cfg.out = o.clone();
        }
        if let Some(i) = &self.integrator {
            cfg.setup.integrator = i.parse::<Integrator>()?;
        }
        if let Some(d) = self.dwell {
            if !(d.is_finite() && d >= 0.0) {
                return Err(crate::error::invalid("dwell", format!("{d} must be >= 0")));
            }
            cfg.setup.transient_rule = TransientRule::Dwell(d);
        }
        Ok(cfg)
    }
}

/// Parses `args` (program name first) and runs the chosen subcommand.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run(o) => o.resolve().and_then(|c| run(&c, out, err)),
        Command::Validate(o) => o.resolve().and_then(|c| validate(&c, out)),
        Command::Gain(o) => o.resolve().and_then(|c| gain(&c, out)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let table = run_experiments(&cfg.setup, &cfg.experiments, &cfg.controllers)?;
    let files = export_all(&cfg.out, &table).map_err(|e| crate::Error::Config {
        path: cfg.out.display().to_string(),
        line: None,
        message: e.to_string(),
    })?;
    let _ = write!(out, "{}", format_summary(&table));
    if cfg.controllers.contains(&ControllerKind::RsHac) && cfg.controllers.len() > 1 {
        let _ = writeln!(out);
        let _ = write!(out, "{}", format_comparison(&table, ControllerKind::RsHac));
    }
    let _ = writeln!(out, "\nwrote {} files to {}", files.len(), cfg.out.display());

    let unsettled: Vec<String> = table
        .cells
        .iter()
        .filter(|c| !c.metrics.stabilized())
        .map(|c| format!("{} {}", c.controller.label(), c.scenario.name))
        .collect();
    if unsettled.is_empty() {
        Ok(0)
    } else {
        let _ = writeln!(err, "not stabilized: {}", unsettled.join(", "));
        Ok(EXIT_FAILED)
    }
}

fn validate(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let checks = run_checks(&cfg.setup)?;
    for c in &checks {
        let _ = writeln!(out, "{c}");
    }
    Ok(if all_passed(&checks) { 0 } else { EXIT_FAILED })
}

fn fmt_row(k: &RowVector4<f64>) -> String {
    format!("[{:.4}, {:.4}, {:.4}, {:.4}]", k[0], k[1], k[2], k[3])
}

fn gain(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let model = discretize(&linearize(&cfg.setup.params), cfg.setup.params.sample_time)?;
    let published = RowVector4::from(PUBLISHED_GAIN);
    let computed = lqr_gain(
        &LqrConfig {
            gain_source: GainSource::Computed,
            ..cfg.setup.lqr
        },
        &model,
    )?;
    let q = cfg.setup.lqr.q_diag;
    let _ = writeln!(out, "control law: u = -K (X - X_ref)");
    for (name, k) in [("published", &published), ("computed", &computed)] {
        let eig = closed_loop_eigenvalue_magnitudes(&model, k);
        let _ = writeln!(out, "{name:<10} K = {}", fmt_row(k));
        let _ = writeln!(
            out,
            "{:<10} |eig(A - BK)| = [{:.6}, {:.6}, {:.6}, {:.6}]",
            "", eig[0], eig[1], eig[2], eig[3]
        );
    }
    let _ = writeln!(
        out,
        "computed with Q = diag({}, {}, {}, {}), R = {}, Ts = {}",
        q[0], q[1], q[2], q[3], cfg.setup.lqr.r, cfg.setup.params.sample_time
    );
    let in_use = match cfg.setup.lqr.gain_source {
        GainSource::Published => "published",
        GainSource::Computed => "computed",
        GainSource::Custom(_) => "custom",
    };
    let _ = writeln!(out, "episodes use the {in_use} gain");
    Ok(0)
}
