//! CSV export and plain-text tables.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use super::compare::{compare, indices_for};
use super::episode::Trajectory;
use super::experiments::{Cell, Experiment, ResultTable};
use crate::control::ControllerKind;

pub const TRAJECTORY_HEADER: [&str; 7] = ["t", "x", "x_dot", "q", "q_dot", "u", "x_ref"];
pub const METRICS_HEADER: [&str; 8] = [
    "controller",
    "experiment",
    "scenario",
    "dt",
    "dxm",
    "sigma_u",
    "overshoot_pct",
    "stabilized",
];

/// Trajectory samples, ten significant digits.
fn sample(v: f64) -> String {
    format!("{v:.9e}")
}

/// Metric values as they appear in both the CSV and the printed summary.
pub fn format_metric(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| format!("{v:.6}"))
}

fn csv_err(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

pub fn write_trajectory_csv<W: io::Write>(w: W, traj: &Trajectory) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(TRAJECTORY_HEADER).map_err(csv_err)?;
    for k in 0..traj.len() {
        let s = traj.states[k];
        out.write_record([
            sample(traj.times[k]),
            sample(s.x),
            sample(s.x_dot),
            sample(s.q),
            sample(s.q_dot),
            sample(traj.inputs[k]),
            sample(traj.references[k]),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

fn metrics_row(c: &Cell) -> [String; 8] {
    let m = &c.metrics;
    [
        c.controller.id().to_string(),
        c.scenario.experiment.id().to_string(),
        c.scenario.name.clone(),
        format_metric(m.transient_time),
        format_metric(Some(m.max_position_deviation)),
        format_metric(Some(m.control_effort)),
        format_metric(m.overshoot),
        m.stabilized().to_string(),
    ]
}

pub fn write_metrics_csv<W: io::Write>(w: W, table: &ResultTable) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(METRICS_HEADER).map_err(csv_err)?;
    for c in &table.cells {
        out.write_record(metrics_row(c)).map_err(csv_err)?;
    }
    out.flush()
}

/// File name of a cell's trajectory, e.g. `exp1_q0=10deg_rshac.csv`.
pub fn trajectory_file_name(c: &Cell) -> String {
    format!(
        "{}_{}_{}.csv",
        c.scenario.experiment.id(),
        c.scenario.name,
        c.controller.id()
    )
}

/// Writes `metrics.csv` plus one trajectory file per cell into `dir`.
pub fn export_all(dir: &Path, table: &ResultTable) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(table.cells.len() + 1);
    for c in &table.cells {
        let path = dir.join(trajectory_file_name(c));
        write_trajectory_csv(io::BufWriter::new(fs::File::create(&path)?), &c.trajectory)?;
        written.push(path);
    }
    let path = dir.join("metrics.csv");
    write_metrics_csv(io::BufWriter::new(fs::File::create(&path)?), table)?;
    written.push(path);
    Ok(written)
}

/// One line per episode with the same numbers as `metrics.csv`.
pub fn format_summary(table: &ResultTable) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:<5} {:<12} {:>14} {:>10} {:>10} {:>10}",
        "ctrl", "exp", "scenario", "dt [s]", "dxm [m]", "sigma_u", "%x_r"
    );
    for c in &table.cells {
        let r = metrics_row(c);
        let dt = if c.metrics.stabilized() {
            r[3].clone()
        } else {
            "not stabilized".to_string()
        };
        let os = if r[6].is_empty() { "-" } else { r[6].as_str() };
        let _ = writeln!(
            s,
            "{:<8} {:<5} {:<12} {:>14} {:>10} {:>10} {:>10}",
            c.controller.label(),
            r[1],
            r[2],
            dt,
            r[4],
            r[5],
            os
        );
    }
    s
}

/// Differences of every other controller against `reference`, one line per pair and scenario.
pub fn format_comparison(table: &ResultTable, reference: ControllerKind) -> String {
    let mut s = String::new();
    for exp in [Experiment::Stabilization, Experiment::Tracking, Experiment::Custom] {
        for scenario in table.scenario_names(exp) {
            let Some(base) = table.get(reference, scenario) else {
                continue;
            };
            for other in table.controllers().into_iter().filter(|k| *k != reference) {
                let Some(o) = table.get(other, scenario) else {
                    continue;
                };
                let diffs = compare(&base.metrics, &o.metrics);
                let cols: Vec<String> = indices_for(&base.metrics)
                    .iter()
                    .zip(&diffs)
                    .map(|(i, d)| format!("{} {}", i.symbol(), d))
                    .collect();
                let _ = writeln!(
                    s,
                    "{} vs {:<6} {:<5} {:<12} {}",
                    reference.label(),
                    other.label(),
                    exp.id(),
                    scenario,
                    cols.join("  ")
                );
            }
        }
    }
    s
}
