//! Run configuration read from a flat TOML document.
//!
//! Keys live in five sections (`plant`, `rshac`, `fuzzy`, `lqr`, `harness`)
//! and may be written either under a `[section]` header or as dotted keys
//! such as `rshac.alpha_u_x = 0.35`. Every omitted key keeps its default.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use toml::Spanned;

use crate::control::{ControllerKind, GainSource, LqrConfig};
use crate::error::{Error, Result};
use crate::harness::{BenchmarkSetup, Experiment, TransientRule};
use crate::hedge::{LinearMap, SemanticMap};
use crate::plant::{Integrator, PlantState};

type Key<T> = Option<Spanned<T>>;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    plant: RawPlant,
    rshac: RawRsHac,
    fuzzy: RawFuzzy,
    lqr: RawLqr,
    harness: RawHarness,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawPlant {
    m: Key<f64>,
    l: Key<f64>,
    i: Key<f64>,
    g: Key<f64>,
    k: Key<f64>,
    ts: Key<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawRsHac {
    x_range: Key<f64>,
    x_dot_range: Key<f64>,
    a_q: Key<f64>,
    a_q_dot: Key<f64>,
    n_x: Key<i64>,
    n_x_dot: Key<i64>,
    n_q: Key<i64>,
    n_q_dot: Key<i64>,
    theta: Key<f64>,
    theta_u: Key<f64>,
    alpha_x: Key<f64>,
    alpha_x_dot: Key<f64>,
    alpha_q: Key<f64>,
    alpha_q_dot: Key<f64>,
    alpha_u_x: Key<f64>,
    alpha_u_x_dot: Key<f64>,
    alpha_u_q: Key<f64>,
    alpha_u_q_dot: Key<f64>,
    u_min: Key<f64>,
    u_max: Key<f64>,
    l1: Key<f64>,
    l2: Key<f64>,
    anchor_ends: Key<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawFuzzy {
    out_negative: Key<f64>,
    out_zero: Key<f64>,
    out_positive: Key<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawLqr {
    q_x: Key<f64>,
    q_x_dot: Key<f64>,
    q_q: Key<f64>,
    q_q_dot: Key<f64>,
    r: Key<f64>,
    gain_source: Key<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawHarness {
    experiment: Key<String>,
    controller: Key<String>,
    out: Key<String>,
    integrator: Key<String>,
    dwell: Key<f64>,
    first_entry: Key<bool>,
    duration: Key<f64>,
    step_time: Key<f64>,
    step_to: Key<f64>,
    custom_x0: Key<f64>,
    custom_x_dot0: Key<f64>,
    custom_q0_deg: Key<f64>,
    custom_q_dot0_deg: Key<f64>,
    custom_x_ref: Key<f64>,
}

/// Fully validated settings for a CLI run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub setup: BenchmarkSetup,
    pub experiments: Vec<Experiment>,
    pub controllers: Vec<ControllerKind>,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            setup: BenchmarkSetup::default(),
            experiments: Experiment::ALL.to_vec(),
            controllers: ControllerKind::ALL.to_vec(),
            out: PathBuf::from("results"),
        }
    }
}

impl RunConfig {
    /// Builds every selected controller once, so that configuration errors
    /// surface before any episode runs.
    pub fn validate(&self) -> Result<()> {
        for k in ControllerKind::ALL {
            let section = match k {
                ControllerKind::RsHac => "rshac",
                ControllerKind::Fuzzy => "fuzzy",
                ControllerKind::Lqr => "lqr",
            };
            self.setup.build_controller(k).map_err(|e| Error::Config {
                path: section.to_string(),
                line: None,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }
}

/// `exp1`, `exp2`, `custom` or `all` (both benchmark experiments).
pub fn parse_experiments(s: &str) -> Result<Vec<Experiment>> {
    if s == "all" {
        Ok(Experiment::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

/// `rshac`, `fc`, `lqr` or `all`.
pub fn parse_controllers(s: &str) -> Result<Vec<ControllerKind>> {
    if s == "all" {
        Ok(ControllerKind::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

/// Dotted key path of the entry written on the line containing `offset`.
fn key_path_at(src: &str, offset: usize) -> String {
    let offset = offset.min(src.len());
    let start = src[..offset].rfind('\n').map_or(0, |p| p + 1);
    let line = src[start..].lines().next().unwrap_or("").trim();
    if let Some(h) = line.strip_prefix('[') {
        return h.trim_end_matches(']').trim().to_string();
    }
    let key = line.split('=').next().unwrap_or("").trim().replace(['"', ' '], "");
    let section = src[..start]
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('['))
        .map(|h| h.trim_matches(['[', ']']).trim().to_string());
    match section {
        Some(s) if !s.is_empty() => format!("{s}.{key}"),
        _ => key,
    }
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, path: &str, key: Option<&Spanned<impl Sized>>, message: impl Display) -> Error {
        Error::Config {
            path: path.to_string(),
            line: key.map(|k| line_of(self.src, k.span().start)),
            message: message.to_string(),
        }
    }

    /// Reads a key and runs `check` on it, attributing failures to its line.
    fn get<T: Clone>(
        &self,
        path: &str,
        key: &Key<T>,
        check: impl Fn(&T) -> std::result::Result<(), String>,
    ) -> Result<Option<T>> {
        match key {
            None => Ok(None),
            Some(k) => {
                check(k.get_ref()).map_err(|m| self.err(path, Some(k), m))?;
                Ok(Some(k.get_ref().clone()))
            }
        }
    }

    fn parse<T: FromStr<Err = Error>>(&self, path: &str, key: &Key<String>) -> Result<Option<T>> {
        match key {
            None => Ok(None),
            Some(k) => k
                .get_ref()
                .parse()
                .map(Some)
                .map_err(|e: Error| self.err(path, Some(k), e)),
        }
    }

    fn set_f64(
        &self,
        path: &str,
        key: &Key<f64>,
        check: fn(f64) -> std::result::Result<(), String>,
        target: &mut f64,
    ) -> Result<()> {
        if let Some(v) = self.get(path, key, |v| check(*v))? {
            *target = v;
        }
        Ok(())
    }
}

fn positive(v: f64) -> std::result::Result<(), String> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(format!("{v} must be finite and > 0"))
    }
}

fn non_negative(v: f64) -> std::result::Result<(), String> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(format!("{v} must be finite and >= 0"))
    }
}

fn finite(v: f64) -> std::result::Result<(), String> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(format!("{v} must be finite"))
    }
}

fn unit_open(v: f64) -> std::result::Result<(), String> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(format!("{v} is not in (0, 1)"))
    }
}

fn unit_closed(v: f64) -> std::result::Result<(), String> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(format!("{v} is not in [0, 1]"))
    }
}

fn odd_count(n: &i64) -> std::result::Result<(), String> {
    if *n >= 1 && n % 2 == 1 {
        Ok(())
    } else {
        Err(format!("{n} must be an odd count >= 1"))
    }
}

/// Parses a configuration document. An empty document gives the defaults.
pub fn parse_config(src: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(src).map_err(|e| {
        let (path, line) = match e.span() {
            Some(span) => (key_path_at(src, span.start), Some(line_of(src, span.start))),
            None => (String::new(), None),
        };
        Error::Config {
            path,
            line,
            message: e.message().trim().to_string(),
        }
    })?;
    let cx = Ctx { src };
    let mut cfg = RunConfig::default();
    let setup = &mut cfg.setup;

    let p = &raw.plant;
    let params = &mut setup.params;
    cx.set_f64("plant.m", &p.m, positive, &mut params.mass)?;
    cx.set_f64("plant.l", &p.l, positive, &mut params.length)?;
    cx.set_f64("plant.i", &p.i, non_negative, &mut params.inertia)?;
    cx.set_f64("plant.g", &p.g, positive, &mut params.gravity)?;
    cx.set_f64("plant.k", &p.k, non_negative, &mut params.damping)?;
    cx.set_f64("plant.ts", &p.ts, positive, &mut params.sample_time)?;

    let r = &raw.rshac;
    let front = &mut setup.rshac.front;
    if let Some(h) = cx.get("rshac.x_range", &r.x_range, |v| positive(*v))? {
        front.maps.x = SemanticMap::Linear(LinearMap::symmetric(h)?);
    }
    if let Some(h) = cx.get("rshac.x_dot_range", &r.x_dot_range, |v| positive(*v))? {
        front.maps.x_dot = SemanticMap::Linear(LinearMap::symmetric(h)?);
    }
    if let Some(a) = cx.get("rshac.a_q", &r.a_q, |v| positive(*v))? {
        front.maps.q = SemanticMap::sigmoid(a, 0.0)?;
    }
    if let Some(a) = cx.get("rshac.a_q_dot", &r.a_q_dot, |v| positive(*v))? {
        front.maps.q_dot = SemanticMap::sigmoid(a, 0.0)?;
    }
    cx.set_f64("rshac.u_min", &r.u_min, finite, &mut front.u_min)?;
    cx.set_f64("rshac.u_max", &r.u_max, finite, &mut front.u_max)?;
    cx.set_f64("rshac.l1", &r.l1, positive, &mut front.l1)?;
    cx.set_f64("rshac.l2", &r.l2, positive, &mut front.l2)?;
    let front = *front;
    front.validate().map_err(|e| {
        let key = [&r.u_min, &r.u_max, &r.l1, &r.l2]
            .into_iter()
            .flatten()
            .next();
        cx.err("rshac", key, e)
    })?;

    let sf = &mut setup.rshac.state_frames;
    let cf = &mut setup.rshac.control_frames;
    for (name, key, s, c) in [
        ("rshac.n_x", &r.n_x, &mut sf.x, &mut cf.x),
        ("rshac.n_x_dot", &r.n_x_dot, &mut sf.x_dot, &mut cf.x_dot),
        ("rshac.n_q", &r.n_q, &mut sf.q, &mut cf.q),
        ("rshac.n_q_dot", &r.n_q_dot, &mut sf.q_dot, &mut cf.q_dot),
    ] {
        if let Some(n) = cx.get(name, key, odd_count)? {
            s.n_labels = n as usize;
            c.n_labels = n as usize;
        }
    }
    if let Some(t) = cx.get("rshac.theta", &r.theta, |v| unit_open(*v))? {
        for f in [&mut sf.x, &mut sf.x_dot, &mut sf.q, &mut sf.q_dot] {
            f.theta = t;
        }
    }
    if let Some(t) = cx.get("rshac.theta_u", &r.theta_u, |v| unit_open(*v))? {
        for f in [&mut cf.x, &mut cf.x_dot, &mut cf.q, &mut cf.q_dot] {
            f.theta = t;
        }
    }
    for (name, key, f) in [
        ("rshac.alpha_x", &r.alpha_x, &mut sf.x),
        ("rshac.alpha_x_dot", &r.alpha_x_dot, &mut sf.x_dot),
        ("rshac.alpha_q", &r.alpha_q, &mut sf.q),
        ("rshac.alpha_q_dot", &r.alpha_q_dot, &mut sf.q_dot),
        ("rshac.alpha_u_x", &r.alpha_u_x, &mut cf.x),
        ("rshac.alpha_u_x_dot", &r.alpha_u_x_dot, &mut cf.x_dot),
        ("rshac.alpha_u_q", &r.alpha_u_q, &mut cf.q),
        ("rshac.alpha_u_q_dot", &r.alpha_u_q_dot, &mut cf.q_dot),
    ] {
        cx.set_f64(name, key, unit_open, &mut f.alpha)?;
    }
    if let Some(b) = cx.get("rshac.anchor_ends", &r.anchor_ends, |_| Ok(()))? {
        setup.rshac.anchor_ends = b;
    }

    // the fuzzy controller shares the hedge controller's front end
    setup.fuzzy.front = front;
    let f = &raw.fuzzy;
    let s = &mut setup.fuzzy.singletons;
    cx.set_f64("fuzzy.out_negative", &f.out_negative, unit_closed, &mut s[0])?;
    cx.set_f64("fuzzy.out_zero", &f.out_zero, unit_closed, &mut s[1])?;
    cx.set_f64("fuzzy.out_positive", &f.out_positive, unit_closed, &mut s[2])?;

    let l = &raw.lqr;
    let lqr: &mut LqrConfig = &mut setup.lqr;
    lqr.u_min = front.u_min;
    lqr.u_max = front.u_max;
    cx.set_f64("lqr.q_x", &l.q_x, non_negative, &mut lqr.q_diag[0])?;
    cx.set_f64("lqr.q_x_dot", &l.q_x_dot, non_negative, &mut lqr.q_diag[1])?;
    cx.set_f64("lqr.q_q", &l.q_q, non_negative, &mut lqr.q_diag[2])?;
    cx.set_f64("lqr.q_q_dot", &l.q_q_dot, non_negative, &mut lqr.q_diag[3])?;
    cx.set_f64("lqr.r", &l.r, positive, &mut lqr.r)?;
    if let Some(g) = cx.parse::<GainSource>("lqr.gain_source", &l.gain_source)? {
        lqr.gain_source = g;
    }

    let h = &raw.harness;
    if let Some(k) = &h.experiment {
        cfg.experiments =
            parse_experiments(k.get_ref()).map_err(|e| cx.err("harness.experiment", Some(k), e))?;
    }
    if let Some(k) = &h.controller {
        cfg.controllers =
            parse_controllers(k.get_ref()).map_err(|e| cx.err("harness.controller", Some(k), e))?;
    }
    if let Some(o) = cx.get("harness.out", &h.out, |s| {
        if s.is_empty() {
            Err("output directory must not be empty".to_string())
        } else {
            Ok(())
        }
    })? {
        cfg.out = PathBuf::from(o);
    }
    let setup = &mut cfg.setup;
    if let Some(i) = cx.parse::<Integrator>("harness.integrator", &h.integrator)? {
        setup.integrator = i;
    }
    if let Some(d) = cx.get("harness.dwell", &h.dwell, |v| non_negative(*v))? {
        setup.transient_rule = TransientRule::Dwell(d);
    }
    if let Some(true) = cx.get("harness.first_entry", &h.first_entry, |_| Ok(()))? {
        setup.transient_rule = TransientRule::FirstEntry;
    }
    cx.set_f64("harness.duration", &h.duration, positive, &mut setup.duration)?;
    cx.set_f64("harness.step_time", &h.step_time, non_negative, &mut setup.step_time)?;
    cx.set_f64("harness.step_to", &h.step_to, finite, &mut setup.step_to)?;
    if setup.step_time >= setup.duration {
        return Err(cx.err(
            "harness.step_time",
            h.step_time.as_ref(),
            format!("{} must be earlier than the episode end {}", setup.step_time, setup.duration),
        ));
    }
    if setup.step_to == 0.0 {
        return Err(cx.err("harness.step_to", h.step_to.as_ref(), "step height must be nonzero"));
    }
    let mut init = setup.custom_initial.to_array();
    cx.set_f64("harness.custom_x0", &h.custom_x0, finite, &mut init[0])?;
    cx.set_f64("harness.custom_x_dot0", &h.custom_x_dot0, finite, &mut init[1])?;
    if let Some(d) = cx.get("harness.custom_q0_deg", &h.custom_q0_deg, |v| finite(*v))? {
        init[2] = d.to_radians();
    }
    if let Some(d) = cx.get("harness.custom_q_dot0_deg", &h.custom_q_dot0_deg, |v| finite(*v))? {
        init[3] = d.to_radians();
    }
    setup.custom_initial = PlantState::from_array(init);
    cx.set_f64("harness.custom_x_ref", &h.custom_x_ref, finite, &mut setup.custom_reference)?;

    setup.params.validate().map_err(|e| cx.err("plant", None::<&Spanned<()>>, e))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Config {
        path: path.display().to_string(),
        line: None,
        message: e.to_string(),
    })?;
    parse_config(&src)
}
