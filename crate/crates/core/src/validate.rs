//! Self-checks run by `rshac validate` against a concrete configuration.

use std::fmt;

use crate::control::{
    adaptive_weights, closed_loop_spectral_radius, dare_residual, lqr_gain, sirm_infer,
    solve_dare, Channel, ControllerKind, GainSource, LqrConfig, PUBLISHED_GAIN,
};
use crate::error::Result;
use crate::harness::{holds_after_dwell, run_episode, transient_time, BenchmarkSetup, EpisodeSpec, Reference};
use crate::hedge::SemanticMap;
use crate::plant::{discretize, linearize, nonlinear_derivative, PlantState};
use nalgebra::RowVector4;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Reported but never fails the run.
    pub informational: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.informational) {
            (true, _) => "PASS",
            (false, true) => "NOTE",
            (false, false) => "FAIL",
        };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
        informational: false,
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || c.informational)
}

/// Runs every self-check. Errors only come from building the controllers.
pub fn run_checks(setup: &BenchmarkSetup) -> Result<Vec<Check>> {
    let mut out = vec![
        frames(setup),
        maps(setup),
        sirm(setup),
        weights_sum(setup),
        jacobian(setup),
    ];
    out.extend(weight_continuity(setup));
    out.extend(lqr(setup)?);
    out.push(odd_symmetry(setup)?);
    out.extend(episodes(setup)?);
    Ok(out)
}

fn frames(setup: &BenchmarkSetup) -> Check {
    let specs = setup.rshac.state_frames.iter().chain(setup.rshac.control_frames.iter());
    let mut bad = Vec::new();
    for (c, spec) in specs {
        let Ok(f) = spec.build() else {
            bad.push(format!("{} frame does not build", c.name()));
            continue;
        };
        let v = f.values();
        let n = v.len();
        let increasing = v.windows(2).all(|w| w[0] < w[1]);
        let symmetric = (0..n).all(|i| ((v[i] - f.theta()) + (v[n - 1 - i] - f.theta())).abs() < 1e-12);
        let bounded = v.iter().all(|x| *x > 0.0 && *x < 1.0);
        if !(increasing && symmetric && bounded) {
            bad.push(format!("{} frame {:?}", c.name(), v));
        }
    }
    check(
        "label frames are increasing, symmetric and inside (0, 1)",
        bad.is_empty(),
        if bad.is_empty() { "8 frames".to_string() } else { bad.join("; ") },
    )
}

fn maps(setup: &BenchmarkSetup) -> Check {
    let mut worst: f64 = 0.0;
    let mut fd_worst: f64 = 0.0;
    for (_, m) in setup.rshac.front.maps.iter() {
        let span = match m {
            SemanticMap::Linear(l) => l.crisp_range().1,
            SemanticMap::Sigmoid(s) => 2.0 / s.slope(),
        };
        for k in -20..=20 {
            let x = span * k as f64 / 21.0;
            if let Ok(back) = m.desemantize(m.semantize(x)) {
                worst = worst.max((back - x).abs());
            } else {
                worst = f64::INFINITY;
            }
            if let SemanticMap::Sigmoid(s) = m {
                let h = 1e-6;
                let fd = (s.semantize(x + h) - s.semantize(x - h)) / (2.0 * h);
                fd_worst = fd_worst.max(((fd - s.derivative(x)) / s.derivative(x)).abs());
            }
        }
    }
    check(
        "semantic maps invert and sigmoid slopes match finite differences",
        worst < 1e-9 && fd_worst < 1e-6,
        format!("round trip {worst:.1e}, derivative {fd_worst:.1e}"),
    )
}

fn sirm(setup: &BenchmarkSetup) -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..=1000 {
        let xs = k as f64 / 1000.0;
        match sirm_infer(xs, &setup.fuzzy) {
            Ok(u) => worst = worst.max((u - xs).abs()),
            Err(_) => worst = f64::INFINITY,
        }
    }
    let identity_expected = setup.fuzzy.singletons == [0.0, 0.5, 1.0];
    Check {
        name: "fuzzy rule module is the identity",
        passed: worst < 1e-12,
        detail: format!("max deviation {worst:.1e}"),
        informational: !identity_expected,
    }
}

fn weights_sum(setup: &BenchmarkSetup) -> Check {
    let f = &setup.rshac.front;
    let mut worst: f64 = 0.0;
    for k in -400..=400 {
        let q = k as f64 * 0.004;
        let w = adaptive_weights(q, f.l1, f.l2);
        worst = worst.max((w.sum() - 1.0).abs());
    }
    check("blend weights sum to one", worst < 1e-12, format!("max error {worst:.1e}"))
}

fn weight_continuity(setup: &BenchmarkSetup) -> Vec<Check> {
    let f = &setup.rshac.front;
    let jump = |at: f64| {
        let eps = 1e-12;
        let lo = adaptive_weights(at - eps, f.l1, f.l2);
        let hi = adaptive_weights(at + eps, f.l1, f.l2);
        Channel::ALL
            .iter()
            .map(|c| (lo.get(*c) - hi.get(*c)).abs())
            .fold(0.0, f64::max)
    };
    let (j1, j2) = (jump(f.l1), jump(f.l2));
    vec![
        Check {
            name: "blend weights are continuous at l1",
            passed: j1 < 1e-9,
            detail: format!("largest jump {j1:.4}"),
            // the schedule hands the cart channels 1/8 each right after l1
            informational: true,
        },
        check("blend weights are continuous at l2", j2 < 1e-9, format!("largest jump {j2:.1e}")),
    ]
}

fn jacobian(setup: &BenchmarkSetup) -> Check {
    let p = &setup.params;
    let lin = linearize(p);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for j in 0..5 {
        let col = |sign: f64| {
            let mut s = [0.0; 4];
            let mut u = 0.0;
            if j < 4 {
                s[j] = sign * h;
            } else {
                u = sign * h;
            }
            nonlinear_derivative(&PlantState::from_array(s), u, p).to_array()
        };
        let (plus, minus) = (col(1.0), col(-1.0));
        for i in 0..4 {
            let fd = (plus[i] - minus[i]) / (2.0 * h);
            let exact = if j < 4 { lin.a[(i, j)] } else { lin.b[i] };
            worst = worst.max((fd - exact).abs() / exact.abs().max(1.0));
        }
    }
    check(
        "linear model matches the numeric Jacobian",
        worst < 1e-6,
        format!("max relative error {worst:.1e}"),
    )
}

fn lqr(setup: &BenchmarkSetup) -> Result<Vec<Check>> {
    let model = discretize(&linearize(&setup.params), setup.params.sample_time)?;
    let cfg = LqrConfig {
        gain_source: GainSource::Computed,
        ..setup.lqr
    };
    let p = solve_dare(&model.a, &model.b, &cfg.q_matrix(), cfg.r)?;
    let res = dare_residual(&model.a, &model.b, &cfg.q_matrix(), cfg.r, &p);
    let k = lqr_gain(&cfg, &model)?;
    let rho_pub = closed_loop_spectral_radius(&model, &RowVector4::from(PUBLISHED_GAIN));
    let rel: Vec<f64> = (0..4)
        .map(|i| (k[i] / PUBLISHED_GAIN[i] - 1.0).abs() * 100.0)
        .collect();
    Ok(vec![
        check("Riccati residual", res < 1e-8, format!("{res:.1e}")),
        check(
            "published gain stabilizes the discrete model",
            rho_pub < 1.0,
            format!("spectral radius {rho_pub:.6}"),
        ),
        Check {
            name: "computed gain against the published gain",
            passed: rel.iter().all(|r| *r <= 1.0),
            detail: format!(
                "K = [{:.3}, {:.3}, {:.3}, {:.3}], deviation % = [{:.1}, {:.1}, {:.1}, {:.1}]",
                k[0], k[1], k[2], k[3], rel[0], rel[1], rel[2], rel[3]
            ),
            informational: true,
        },
    ])
}

fn odd_symmetry(setup: &BenchmarkSetup) -> Result<Check> {
    let states = [
        PlantState::new(0.1, -0.3, 0.05, 0.4),
        PlantState::new(-0.5, 2.5, 0.3, -1.0),
        PlantState::new(0.01, 0.0, -0.9, 3.0),
        PlantState::new(0.2, 0.1, 0.0, 0.0),
    ];
    let mut bad = Vec::new();
    for kind in ControllerKind::ALL {
        let c = setup.build_controller(kind)?;
        for s in &states {
            let a = c.control(s, 0.0)?.u;
            let b = c.control(&-*s, 0.0)?.u;
            if a != -b {
                bad.push(format!("{} at {:?}: {a} vs {b}", kind.label(), s.to_array()));
            }
        }
    }
    Ok(check(
        "controllers are odd in the state",
        bad.is_empty(),
        if bad.is_empty() { "exact".to_string() } else { bad.join("; ") },
    ))
}

fn episodes(setup: &BenchmarkSetup) -> Result<Vec<Check>> {
    let spec = |kind, initial| EpisodeSpec {
        controller: kind,
        initial,
        reference: Reference::Constant(0.0),
        duration: 2.0,
        sample_time: setup.params.sample_time,
        integrator: setup.integrator,
    };
    let tilt = PlantState::new(0.0, 0.0, 10f64.to_radians(), 0.0);
    let (mut fixed, mut mirror, mut repeat) = (Vec::new(), Vec::new(), Vec::new());
    for kind in ControllerKind::ALL {
        let c = setup.build_controller(kind)?;
        let rest = run_episode(&spec(kind, PlantState::ZERO), c.as_ref(), &setup.params)?;
        if !rest.states.iter().all(|s| *s == PlantState::ZERO) || rest.inputs.iter().any(|u| *u != 0.0) {
            fixed.push(kind.label());
        }
        let a = run_episode(&spec(kind, tilt), c.as_ref(), &setup.params)?;
        let b = run_episode(&spec(kind, -tilt), c.as_ref(), &setup.params)?;
        let negated = a.states.iter().zip(&b.states).all(|(x, y)| *x == -*y)
            && a.inputs.iter().zip(&b.inputs).all(|(x, y)| *x == -*y);
        if !negated {
            mirror.push(kind.label());
        }
        let again = run_episode(&spec(kind, tilt), c.as_ref(), &setup.params)?;
        if again != a {
            repeat.push(kind.label());
        }
    }
    let list = |v: &Vec<&str>| if v.is_empty() { "all controllers".to_string() } else { format!("broken for {}", v.join(", ")) };
    let mut out = vec![
        check("upright rest is held exactly", fixed.is_empty(), list(&fixed)),
        check("mirrored start gives a negated trajectory", mirror.is_empty(), list(&mirror)),
        check("episodes are deterministic", repeat.is_empty(), list(&repeat)),
    ];

    // a long LQR run to see the settling box hold past the dwell window
    let c = setup.build_controller(ControllerKind::Lqr)?;
    let long = EpisodeSpec {
        duration: setup.duration,
        ..spec(ControllerKind::Lqr, tilt)
    };
    let t = run_episode(&long, c.as_ref(), &setup.params)?;
    let captured = transient_time(&t, setup.transient_rule)
        .map(|tr| holds_after_dwell(&t, &tr, setup.transient_rule));
    out.push(check(
        "settled state stays inside the box",
        captured == Some(true),
        match captured {
            Some(true) => "LQR from 10 degrees".to_string(),
            Some(false) => "left the box after the dwell window".to_string(),
            None => "LQR from 10 degrees never settled".to_string(),
        },
    ));
    Ok(out)
}
