//! Balances the pendulum from a 20 degree tilt with the hedge-algebra
//! controller and shows how the four channel actions are blended.
//!
//! ```text
//! cargo run --example rshac_episode
//! ```

use std::error::Error;
use std::fmt::Write as _;

use rshac::control::{Controller, ControllerKind, RsHacConfig, RsHacController};
use rshac::harness::{evaluate, run_episode, EpisodeSpec, Reference, TransientRule};
use rshac::plant::{CartPoleParams, Integrator, PlantState};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let params = CartPoleParams::default();
    let controller = RsHacController::new(&RsHacConfig::default())?;

    let start = PlantState::new(0.0, 0.0, 20f64.to_radians(), 0.0);
    let first = controller.control(&start, 0.0)?;
    writeln!(out, "first tick: u = {:.4} m/s^2", first.u)?;
    for (c, u) in first.intermediates.iter() {
        writeln!(out, "  {:>6}: u = {:>8.4}, weight {:.4}", c.name(), u, first.weights.get(c))?;
    }

    let spec = EpisodeSpec {
        controller: ControllerKind::RsHac,
        initial: start,
        reference: Reference::Constant(0.0),
        duration: 10.0,
        sample_time: params.sample_time,
        integrator: Integrator::Rk4,
    };
    let traj = run_episode(&spec, &controller, &params)?;

    writeln!(out, "\n{:>5} {:>9} {:>9} {:>9} {:>9}", "t", "x", "q [deg]", "u", "w_q")?;
    for k in (0..traj.len()).step_by(500).take(8) {
        let s = traj.states[k];
        let w = controller.control(&s, 0.0)?.weights.q;
        writeln!(
            out,
            "{:>5.2} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            traj.times[k],
            s.x,
            s.q.to_degrees(),
            traj.inputs[k],
            w
        )?;
    }

    let m = evaluate(&traj, TransientRule::default());
    match m.transient_time {
        Some(dt) => writeln!(out, "\nsettled after {dt:.3} s")?,
        None => writeln!(out, "\ndid not settle")?,
    }
    writeln!(out, "max |x| = {:.4} m, effort = {:.4} m/s", m.max_position_deviation, m.control_effort)?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
