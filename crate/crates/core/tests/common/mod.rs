//! Property bodies shared by the property tests and the acceptance report.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use rshac::control::{
    adaptive_weights, dare_residual, sirm_infer, solve_dare, ControllerKind, FuzzyConfig,
    GainSource, LqrConfig, RsHacConfig,
};
use rshac::harness::{run_episode, write_trajectory_csv, BenchmarkSetup, EpisodeSpec, Reference};
use rshac::hedge::{generate_sqsm, msi, LinearMap, SigmoidMap};
use rshac::plant::{discretize, linearize, nonlinear_derivative, CartPoleParams, Integrator, PlantState};

pub type Outcome = Result<(), TestCaseError>;

/// Closed form of the recursive frame, 1-based index `i`.
pub fn sqsm_closed_form(n: usize, theta: f64, alpha: f64, i: usize) -> f64 {
    let m = (n - 1) / 2 + 1;
    if i < m {
        theta * (1.0 - alpha.powi(i as i32))
    } else if i == m {
        theta
    } else {
        theta * (1.0 + alpha.powi((n + 1 - i) as i32))
    }
}

/// Deepest hedge term still distinguishable from its neighbours in `f64`.
pub fn representable(n: usize, alpha: f64) -> bool {
    alpha.powi(((n - 1) / 2) as i32) > 1e-12
}

pub fn odd_n() -> impl Strategy<Value = usize> {
    (0usize..30).prop_map(|k| 2 * k + 1)
}

pub fn unit() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

pub fn params() -> impl Strategy<Value = CartPoleParams> {
    (0.05f64..1.0, 0.05f64..1.0, 1e-5f64..1e-2, 9.0f64..10.0, 0.0f64..1e-2).prop_map(
        |(mass, length, inertia, gravity, damping)| CartPoleParams {
            mass,
            length,
            inertia,
            gravity,
            damping,
            sample_time: 0.001,
        },
    )
}

pub fn state() -> impl Strategy<Value = PlantState> {
    (-1.0f64..1.0, -3.0f64..3.0, -1.2f64..1.2, -5.0f64..5.0)
        .prop_map(|(x, v, q, w)| PlantState::new(x, v, q, w))
}

pub fn sqsm_matches_closed_form(n: usize, theta: f64, alpha: f64) -> Outcome {
    let f = generate_sqsm(n, theta, alpha).unwrap();
    prop_assert_eq!(f.values().len(), n);
    for i in 1..=n {
        let expected = sqsm_closed_form(n, theta, alpha, i);
        prop_assert!((f.values()[i - 1] - expected).abs() <= 1e-15, "index {}", i);
    }
    Ok(())
}

pub fn sqsm_shape(n: usize, theta: f64, alpha: f64) -> Outcome {
    prop_assume!(representable(n, alpha));
    let f = generate_sqsm(n, theta, alpha).unwrap();
    let v = f.values();
    prop_assert!(v.windows(2).all(|w| w[0] < w[1]), "not increasing");
    prop_assert_eq!(v[msi(n).unwrap() - 1], theta);
    for i in 0..n {
        prop_assert!((v[i] + v[n - 1 - i] - 2.0 * theta).abs() < 1e-12, "not symmetric");
        prop_assert!(v[i] > 0.0 && v[i] < 2.0 * theta, "out of (0, 2θ)");
    }
    Ok(())
}

pub fn sigmoid_properties(a: f64, c: f64, z: f64) -> Outcome {
    let m = SigmoidMap::new(a, c).unwrap();
    prop_assert_eq!(m.semantize(c), 0.5);
    prop_assert!(m.semantize(c + 1e6) > 1.0 - 1e-12);
    prop_assert!(m.semantize(c - 1e6) < 1e-12);
    let x = c + z / a;
    let s = m.semantize(x);
    prop_assert!(s > 0.0 && s < 1.0);
    let analytic = a * s * (1.0 - s);
    prop_assert!((m.derivative(x) - analytic).abs() <= 1e-12 * analytic);
    let h = 1e-4 / a;
    let fd = (m.semantize(x + h) - m.semantize(x - h)) / (2.0 * h);
    prop_assert!(((fd - analytic) / analytic).abs() <= 1e-6, "fd {} vs {}", fd, analytic);
    Ok(())
}

pub fn linear_round_trip(lo: f64, width: f64, s_lo: f64, s_w: f64, t: f64) -> Outcome {
    let m = LinearMap::new(lo, lo + width, s_lo, s_lo + s_w).unwrap();
    let x = lo + t * width;
    let back = m.desemantize(m.semantize(x)).unwrap();
    prop_assert!((back - x).abs() <= 1e-9 * x.abs().max(1.0));
    Ok(())
}

/// `z = a·(x − c)`; beyond `|z| ≈ 8` the inverse loses digits to `1 − s`.
pub fn sigmoid_round_trip(a: f64, c: f64, z: f64) -> Outcome {
    let m = SigmoidMap::new(a, c).unwrap();
    let x = c + z / a;
    let back = m.desemantize(m.semantize(x)).unwrap();
    prop_assert!((back - x).abs() <= 1e-9 * x.abs().max(1.0));
    Ok(())
}

pub fn sirm_is_identity(xs: f64) -> Outcome {
    prop_assert!((sirm_infer(xs, &FuzzyConfig::default()).unwrap() - xs).abs() <= 1e-12);
    Ok(())
}

pub fn weights_sum_to_one(q: f64, l1: f64, l2: f64) -> Outcome {
    let w = adaptive_weights(q, l1, l2);
    prop_assert!((w.sum() - 1.0).abs() <= 1e-12);
    for (_, v) in w.iter() {
        prop_assert!((0.0..=1.0).contains(v));
    }
    Ok(())
}

/// Largest change of any weight across `at`.
pub fn weight_jump(at: f64, l1: f64, l2: f64) -> f64 {
    let eps = 1e-12 * at.max(1.0);
    let (lo, hi) = (adaptive_weights(at - eps, l1, l2), adaptive_weights(at + eps, l1, l2));
    lo.iter()
        .zip(hi.iter())
        .map(|((_, a), (_, b))| (a - b).abs())
        .fold(0.0, f64::max)
}

pub fn weights_continuous_at_l1(l1: f64, l2: f64) -> Outcome {
    let jump = weight_jump(l1, l1, l2);
    prop_assert!(jump <= 1e-9, "jump of {} at l1 = {}", jump, l1);
    Ok(())
}

pub fn weights_continuous_at_l2(l1: f64, l2: f64) -> Outcome {
    let jump = weight_jump(l2, l1, l2);
    prop_assert!(jump <= 1e-9, "jump of {} at l2 = {}", jump, l2);
    Ok(())
}

pub fn jacobian_matches_finite_differences(p: CartPoleParams) -> Outcome {
    let lin = linearize(&p);
    let h = 1e-6;
    for j in 0..5 {
        let eval = |sign: f64| {
            let mut s = [0.0; 4];
            let mut u = 0.0;
            if j < 4 {
                s[j] = sign * h
            } else {
                u = sign * h
            }
            nonlinear_derivative(&PlantState::from_array(s), u, &p).to_array()
        };
        let (hi, lo) = (eval(1.0), eval(-1.0));
        for i in 0..4 {
            let fd = (hi[i] - lo[i]) / (2.0 * h);
            let exact = if j < 4 { lin.a[(i, j)] } else { lin.b[i] };
            prop_assert!(
                (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                "entry ({},{}): {} vs {}", i, j, fd, exact
            );
        }
    }
    Ok(())
}

/// Residual relative to `max(1, ‖P‖max)`.
pub fn dare_residual_is_small(q: [f64; 4], r: f64) -> Outcome {
    let p = CartPoleParams::default();
    let m = discretize(&linearize(&p), p.sample_time).unwrap();
    let cfg = LqrConfig { q_diag: q, r, gain_source: GainSource::Computed, ..Default::default() };
    let sol = solve_dare(&m.a, &m.b, &cfg.q_matrix(), r).unwrap();
    let res = dare_residual(&m.a, &m.b, &cfg.q_matrix(), r, &sol);
    prop_assert!(res < 1e-8 * sol.abs().max().max(1.0), "residual {}", res);
    Ok(())
}

pub fn controllers_are_odd(s: PlantState, anchored: bool) -> Outcome {
    let setup = BenchmarkSetup {
        rshac: RsHacConfig { anchor_ends: anchored, ..Default::default() },
        ..Default::default()
    };
    for kind in ControllerKind::ALL {
        let c = setup.build_controller(kind).unwrap();
        let a = c.control(&s, 0.0).unwrap();
        let b = c.control(&-s, 0.0).unwrap();
        prop_assert_eq!(a.u, -b.u, "{:?}", kind);
        prop_assert!(a.u.abs() <= 29.42);
    }
    Ok(())
}

fn short_spec(kind: ControllerKind, initial: PlantState, reference: Reference) -> EpisodeSpec {
    EpisodeSpec {
        controller: kind,
        initial,
        reference,
        duration: 1.5,
        sample_time: 0.001,
        integrator: Integrator::Rk4,
    }
}

pub fn mirrored_episodes_negate(q0_deg: f64, x0: f64) -> Outcome {
    let setup = BenchmarkSetup::default();
    let start = PlantState::new(x0, 0.0, q0_deg.to_radians(), 0.0);
    for kind in ControllerKind::ALL {
        let c = setup.build_controller(kind).unwrap();
        let reference = Reference::Constant(0.0);
        let a = run_episode(&short_spec(kind, start, reference), c.as_ref(), &setup.params).unwrap();
        let b = run_episode(&short_spec(kind, -start, reference), c.as_ref(), &setup.params).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for k in 0..a.len() {
            prop_assert_eq!(a.states[k], -b.states[k], "{:?} sample {}", kind, k);
            prop_assert_eq!(a.inputs[k], -b.inputs[k], "{:?} sample {}", kind, k);
        }
    }
    Ok(())
}

pub fn episodes_are_deterministic(q0_deg: f64) -> Outcome {
    let setup = BenchmarkSetup::default();
    for kind in ControllerKind::ALL {
        let c = setup.build_controller(kind).unwrap();
        let spec = short_spec(
            kind,
            PlantState::new(0.0, 0.0, q0_deg.to_radians(), 0.0),
            Reference::Step { at: 0.2, from: 0.0, to: 0.1 },
        );
        let mut bytes = [Vec::new(), Vec::new()];
        for b in &mut bytes {
            let t = run_episode(&spec, c.as_ref(), &setup.params).unwrap();
            write_trajectory_csv(&mut *b, &t).unwrap();
        }
        prop_assert!(bytes[0] == bytes[1], "{:?} reruns differ", kind);
    }
    Ok(())
}
