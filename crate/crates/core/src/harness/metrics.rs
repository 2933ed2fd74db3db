//! Performance indices of a closed-loop trajectory.

use super::episode::Trajectory;
use crate::error::{Error, Result};
use crate::plant::PlantState;

/// Half-widths of the box the state must settle in.
pub const POSITION_TOLERANCE: f64 = 0.02;
pub const VELOCITY_TOLERANCE: f64 = 0.02;
pub const ANGLE_TOLERANCE_DEG: f64 = 0.5;
pub const RATE_TOLERANCE_DEG: f64 = 0.5;

/// Default dwell window for the transient time (s).
pub const DEFAULT_DWELL: f64 = 0.5;

/// True when every state is inside the settling box (bounds inclusive).
pub fn stability_satisfied(s: &PlantState, x_ref: f64) -> bool {
    (s.x - x_ref).abs() <= POSITION_TOLERANCE
        && s.x_dot.abs() <= VELOCITY_TOLERANCE
        && s.q.abs() <= ANGLE_TOLERANCE_DEG.to_radians()
        && s.q_dot.abs() <= RATE_TOLERANCE_DEG.to_radians()
}

/// How the settling instant is detected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransientRule {
    /// First sample after which the box holds for the given number of seconds.
    Dwell(f64),
    /// First sample inside the box.
    FirstEntry,
}

impl Default for TransientRule {
    fn default() -> Self {
        TransientRule::Dwell(DEFAULT_DWELL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transient {
    /// Sample index of the settling instant.
    pub index: usize,
    /// Time from reference activation to settling (s).
    pub seconds: f64,
}

pub fn transient_time(traj: &Trajectory, rule: TransientRule) -> Option<Transient> {
    if traj.is_empty() || traj.diverged.is_some() {
        return None;
    }
    let start = traj.activation_index;
    let window = match rule {
        TransientRule::Dwell(d) => (d / traj.sample_time).round() as usize,
        TransientRule::FirstEntry => 0,
    };
    let last = traj.len() - 1;
    // length of the run of in-box samples ending at k
    let mut run = 0usize;
    for k in start..=last {
        if stability_satisfied(&traj.states[k], traj.references[k]) {
            run += 1;
            if run > window {
                let index = k - window;
                return Some(Transient {
                    index,
                    seconds: (index - start) as f64 * traj.sample_time,
                });
            }
        } else {
            run = 0;
        }
    }
    None
}

/// Whether the state stays in the box from the end of the dwell window to the
/// end of the episode. A `false` here means the dwell window is too short.
pub fn holds_after_dwell(traj: &Trajectory, transient: &Transient, rule: TransientRule) -> bool {
    let window = match rule {
        TransientRule::Dwell(d) => (d / traj.sample_time).round() as usize,
        TransientRule::FirstEntry => 0,
    };
    (transient.index + window..traj.len())
        .all(|k| stability_satisfied(&traj.states[k], traj.references[k]))
}

/// Largest `|x − x_ref|` over the trajectory (m).
pub fn max_position_deviation(traj: &Trajectory) -> f64 {
    traj.states
        .iter()
        .zip(&traj.references)
        .map(|(s, r)| (s.x - r).abs())
        .fold(0.0, f64::max)
}

/// `Σ |u_k|·Ts` from the activation sample up to and including `end_index`.
pub fn control_effort(traj: &Trajectory, end_index: usize) -> f64 {
    if traj.is_empty() {
        return 0.0;
    }
    let end = end_index.min(traj.len() - 1);
    if end < traj.activation_index {
        return 0.0;
    }
    traj.inputs[traj.activation_index..=end]
        .iter()
        .map(|u| u.abs() * traj.sample_time)
        .sum()
}

/// Overshoot past the new reference after a step, in percent of the step height.
pub fn overshoot_percent(traj: &Trajectory) -> Result<f64> {
    let step = traj
        .step_size
        .ok_or_else(|| Error::Metric("overshoot needs a step reference".to_string()))?;
    if step == 0.0 {
        return Err(Error::Metric("overshoot of a zero-height step".to_string()));
    }
    let dir = step.signum();
    let peak = traj.states[traj.activation_index.min(traj.len())..]
        .iter()
        .zip(&traj.references[traj.activation_index.min(traj.len())..])
        .map(|(s, r)| (s.x - r) * dir)
        .fold(0.0, f64::max);
    Ok(100.0 * peak / step.abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// Settling time (s), `None` when the box is never held.
    pub transient_time: Option<f64>,
    pub max_position_deviation: f64,
    /// Effort up to settling, or over the whole episode when not settled.
    pub control_effort: f64,
    /// Overshoot (%) for step episodes.
    pub overshoot: Option<f64>,
}

impl Metrics {
    pub fn stabilized(&self) -> bool {
        self.transient_time.is_some()
    }
}

pub fn evaluate(traj: &Trajectory, rule: TransientRule) -> Metrics {
    let transient = transient_time(traj, rule);
    let end = transient.map_or(traj.len().saturating_sub(1), |t| t.index);
    Metrics {
        transient_time: transient.map(|t| t.seconds),
        max_position_deviation: max_position_deviation(traj),
        control_effort: control_effort(traj, end),
        overshoot: overshoot_percent(traj).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn traj(states: Vec<PlantState>, inputs: Vec<f64>, refs: Vec<f64>, ts: f64) -> Trajectory {
        Trajectory {
            sample_time: ts,
            times: (0..states.len()).map(|k| k as f64 * ts).collect(),
            states,
            inputs,
            references: refs,
            activation_index: 0,
            step_size: None,
            diverged: None,
        }
    }

    fn pinned(n: usize) -> Trajectory {
        traj(vec![PlantState::ZERO; n], vec![0.0; n], vec![0.0; n], 0.001)
    }

    #[test]
    fn box_edges_are_inclusive() {
        assert!(stability_satisfied(&PlantState::ZERO, 0.0));
        assert!(stability_satisfied(&PlantState::new(0.22, 0.0, 0.0, 0.0), 0.2));
        assert!(stability_satisfied(&PlantState::new(0.02, 0.0, 0.0, 0.0), 0.0));
        assert!(!stability_satisfied(&PlantState::new(0.0, 0.0, 0.6f64.to_radians(), 0.0), 0.0));
        assert!(!stability_satisfied(&PlantState::new(0.0, 0.0, 0.0, 0.6f64.to_radians()), 0.0));
        assert!(!stability_satisfied(&PlantState::new(0.0, 0.021, 0.0, 0.0), 0.0));
    }

    #[test]
    fn pinned_trajectory_settles_immediately() {
        let t = pinned(1001);
        let tr = transient_time(&t, TransientRule::default()).unwrap();
        assert_eq!(tr.index, 0);
        assert_eq!(tr.seconds, 0.0);
        assert_eq!(max_position_deviation(&t), 0.0);
        assert_eq!(control_effort(&t, 1000), 0.0);
    }

    #[test]
    fn dwell_skips_brief_visits() {
        // out for 0.2 s, in for 0.1 s, out for 0.2 s, then in for good
        let ts = 0.001;
        let out = PlantState::new(0.0, 0.0, 0.1, 0.0);
        let mut states = vec![out; 200];
        states.extend(vec![PlantState::ZERO; 100]);
        states.extend(vec![out; 200]);
        states.extend(vec![PlantState::ZERO; 1500]);
        let n = states.len();
        let t = traj(states, vec![0.0; n], vec![0.0; n], ts);
        let tr = transient_time(&t, TransientRule::Dwell(0.5)).unwrap();
        assert_eq!(tr.index, 500);
        assert!((tr.seconds - 0.5).abs() < 1e-12);
        let first = transient_time(&t, TransientRule::FirstEntry).unwrap();
        assert_eq!(first.index, 200);
        assert!(holds_after_dwell(&t, &tr, TransientRule::Dwell(0.5)));
        assert!(!holds_after_dwell(&t, &first, TransientRule::FirstEntry));
    }

    #[test]
    fn dwell_window_must_fit() {
        let ts = 0.001;
        let out = PlantState::new(0.0, 0.0, 0.1, 0.0);
        let mut states = vec![out; 700];
        states.extend(vec![PlantState::ZERO; 300]);
        let t = traj(states, vec![0.0; 1000], vec![0.0; 1000], ts);
        assert!(transient_time(&t, TransientRule::Dwell(0.5)).is_none());
    }

    #[test]
    fn effort_sums_absolute_inputs() {
        let n = 1001;
        let t = traj(vec![PlantState::ZERO; n], vec![1.0; n], vec![0.0; n], 0.001);
        // samples 0..=999 → 1000 · 0.001
        assert!((control_effort(&t, 999) - 1.0).abs() < 1e-12);
        let neg = traj(vec![PlantState::ZERO; n], vec![-2.0; n], vec![0.0; n], 0.001);
        assert!((control_effort(&neg, 499) - 1.0).abs() < 1e-12);
        assert!(control_effort(&t, 100) <= control_effort(&t, 101));
    }

    #[test]
    fn overshoot_of_monotone_approach_is_zero() {
        let n = 100;
        let states: Vec<_> = (0..n)
            .map(|k| PlantState::new(0.2 * k as f64 / n as f64, 0.0, 0.0, 0.0))
            .collect();
        let mut t = traj(states, vec![0.0; n], vec![0.2; n], 0.001);
        t.step_size = Some(0.2);
        assert_eq!(overshoot_percent(&t).unwrap(), 0.0);
        t.states[50].x = 0.21;
        assert!((overshoot_percent(&t).unwrap() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn overshoot_needs_a_step() {
        let mut t = pinned(10);
        assert!(overshoot_percent(&t).is_err());
        t.step_size = Some(0.0);
        assert!(overshoot_percent(&t).is_err());
    }

    #[test]
    fn unsettled_effort_covers_whole_episode() {
        let n = 1000;
        let states = vec![PlantState::new(0.0, 0.0, 0.1, 0.0); n];
        let t = traj(states, vec![1.0; n], vec![0.0; n], 0.001);
        let m = evaluate(&t, TransientRule::default());
        assert!(!m.stabilized());
        assert!((m.control_effort - 1.0).abs() < 1e-12);
    }
}
