use crate::control::{Controller, ControllerKind};
use crate::error::{invalid, Result};
use crate::plant::{integrate_step, CartPoleParams, Integrator, PlantState};

/// Cart position reference over an episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    Constant(f64),
    /// Jumps from `from` to `to` at time `at` (s).
    Step { at: f64, from: f64, to: f64 },
}

impl Reference {
    /// Sample index at which the reference becomes active.
    pub fn activation_index(&self, ts: f64) -> usize {
        match *self {
            Reference::Constant(_) => 0,
            Reference::Step { at, .. } => (at / ts).round() as usize,
        }
    }

    pub fn value_at(&self, k: usize, ts: f64) -> f64 {
        match *self {
            Reference::Constant(r) => r,
            Reference::Step { from, to, .. } => {
                if k >= self.activation_index(ts) {
                    to
                } else {
                    from
                }
            }
        }
    }

    /// Signed step height, or `None` for a constant reference.
    pub fn step_size(&self) -> Option<f64> {
        match *self {
            Reference::Constant(_) => None,
            Reference::Step { from, to, .. } => Some(to - from),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeSpec {
    pub controller: ControllerKind,
    pub initial: PlantState,
    pub reference: Reference,
    /// Episode length (s).
    pub duration: f64,
    /// Controller and plant sampling time (s).
    pub sample_time: f64,
    pub integrator: Integrator,
}

impl EpisodeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(invalid("duration", format!("{} must be > 0", self.duration)));
        }
        if !(self.sample_time.is_finite() && self.sample_time > 0.0) {
            return Err(invalid("sample_time", format!("{} must be > 0", self.sample_time)));
        }
        if !self.initial.is_finite() {
            return Err(invalid("initial", "state must be finite"));
        }
        if let Reference::Step { at, from, to } = self.reference {
            if !(at >= 0.0 && at < self.duration) {
                return Err(invalid(
                    "step_time",
                    format!("{at} must lie in [0, {})", self.duration),
                ));
            }
            if !(from.is_finite() && to.is_finite()) {
                return Err(invalid("reference", "step levels must be finite"));
            }
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.duration / self.sample_time).round() as usize
    }
}

/// Sampled closed-loop response. Sample `k` sits at `k·Ts`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub sample_time: f64,
    pub times: Vec<f64>,
    pub states: Vec<PlantState>,
    /// Applied cart acceleration per sample (m/s²).
    pub inputs: Vec<f64>,
    pub references: Vec<f64>,
    /// First sample at which the episode's reference is in force.
    pub activation_index: usize,
    /// Signed step height for step episodes.
    pub step_size: Option<f64>,
    /// Set when the simulation blew up; the trajectory stops at the last finite sample.
    pub diverged: Option<String>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> Option<&PlantState> {
        self.states.last()
    }
}

/// Closed-loop simulation with zero-order hold on the control input.
pub fn run_episode(
    spec: &EpisodeSpec,
    controller: &dyn Controller,
    params: &CartPoleParams,
) -> Result<Trajectory> {
    spec.validate()?;
    params.validate()?;
    if controller.kind() != spec.controller {
        return Err(invalid(
            "controller",
            format!(
                "episode asks for {} but got {}",
                spec.controller.label(),
                controller.kind().label()
            ),
        ));
    }
    let ts = spec.sample_time;
    let plant = CartPoleParams {
        sample_time: ts,
        ..*params
    };
    let n = spec.n_steps();
    let mut traj = Trajectory {
        sample_time: ts,
        times: Vec::with_capacity(n + 1),
        states: Vec::with_capacity(n + 1),
        inputs: Vec::with_capacity(n + 1),
        references: Vec::with_capacity(n + 1),
        activation_index: spec.reference.activation_index(ts),
        step_size: spec.reference.step_size(),
        diverged: None,
    };

    let mut state = spec.initial;
    for k in 0..=n {
        let x_ref = spec.reference.value_at(k, ts);
        let u = match controller.control(&state, x_ref) {
            Ok(out) => out.u,
            Err(e) => {
                traj.diverged = Some(e.to_string());
                break;
            }
        };
        traj.times.push(k as f64 * ts);
        traj.states.push(state);
        traj.inputs.push(u);
        traj.references.push(x_ref);
        if k == n {
            break;
        }
        match integrate_step(&state, u, &plant, spec.integrator) {
            Ok(next) => state = next,
            Err(e) => {
                traj.diverged = Some(e.to_string());
                break;
            }
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::{LqrConfig, LqrController};

    fn lqr() -> LqrController {
        LqrController::new(&LqrConfig::default(), &CartPoleParams::default()).unwrap()
    }

    fn spec(initial: PlantState, reference: Reference) -> EpisodeSpec {
        EpisodeSpec {
            controller: ControllerKind::Lqr,
            initial,
            reference,
            duration: 1.0,
            sample_time: 0.001,
            integrator: Integrator::Rk4,
        }
    }

    #[test]
    fn step_reference_switches_on_grid() {
        let r = Reference::Step {
            at: 1.0,
            from: 0.0,
            to: 0.2,
        };
        assert_eq!(r.activation_index(0.001), 1000);
        assert_eq!(r.value_at(999, 0.001), 0.0);
        assert_eq!(r.value_at(1000, 0.001), 0.2);
        assert!((r.step_size().unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(Reference::Constant(0.0).step_size(), None);
    }

    #[test]
    fn records_every_sample() {
        let t = run_episode(
            &spec(PlantState::new(0.0, 0.0, 0.05, 0.0), Reference::Constant(0.0)),
            &lqr(),
            &CartPoleParams::default(),
        )
        .unwrap();
        assert_eq!(t.len(), 1001);
        assert_eq!(t.times[0], 0.0);
        assert!((t.times[1000] - 1.0).abs() < 1e-12);
        assert_eq!(t.states[0].q, 0.05);
        assert!(t.diverged.is_none());
    }

    #[test]
    fn fixed_point_stays_put() {
        let t = run_episode(
            &spec(PlantState::ZERO, Reference::Constant(0.0)),
            &lqr(),
            &CartPoleParams::default(),
        )
        .unwrap();
        assert!(t.states.iter().all(|s| *s == PlantState::ZERO));
        assert!(t.inputs.iter().all(|u| *u == 0.0));
    }

    #[test]
    fn rejects_invalid_specs() {
        let p = CartPoleParams::default();
        let mut s = spec(PlantState::ZERO, Reference::Constant(0.0));
        s.duration = 0.0;
        assert!(run_episode(&s, &lqr(), &p).is_err());
        let s = spec(
            PlantState::ZERO,
            Reference::Step {
                at: 2.0,
                from: 0.0,
                to: 0.1,
            },
        );
        assert!(run_episode(&s, &lqr(), &p).is_err());
        let mut s = spec(PlantState::ZERO, Reference::Constant(0.0));
        s.controller = ControllerKind::RsHac;
        assert!(run_episode(&s, &lqr(), &p).is_err());
    }

    #[test]
    fn blow_up_is_flagged() {
        struct Runaway;
        impl Controller for Runaway {
            fn kind(&self) -> ControllerKind {
                ControllerKind::Lqr
            }
            fn control(&self, _: &PlantState, _: f64) -> Result<crate::control::ControlOutput> {
                Ok(crate::control::ControlOutput {
                    u: f64::MAX,
                    intermediates: Default::default(),
                    weights: Default::default(),
                })
            }
        }
        let t = run_episode(
            &spec(PlantState::ZERO, Reference::Constant(0.0)),
            &Runaway,
            &CartPoleParams::default(),
        )
        .unwrap();
        assert!(t.diverged.is_some());
        assert!(t.len() < 1001);
        assert!(t.states.iter().all(|s| s.is_finite()));
    }
}
