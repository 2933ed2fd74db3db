use std::thread;

use super::episode::{run_episode, EpisodeSpec, Reference, Trajectory};
use super::metrics::{evaluate, Metrics, TransientRule};
use crate::control::{
    Controller, ControllerKind, FuzzyConfig, FuzzyController, LqrConfig, LqrController,
    RsHacConfig, RsHacController,
};
use crate::error::{invalid, Result};
use crate::plant::{CartPoleParams, Integrator, PlantState};

/// Initial pendulum angles of the stabilization experiment (degrees).
pub const EXP1_ANGLES_DEG: [f64; 3] = [10.0, 20.0, 30.0];

/// Everything needed to build controllers and run the benchmark episodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkSetup {
    pub params: CartPoleParams,
    pub rshac: RsHacConfig,
    pub fuzzy: FuzzyConfig,
    pub lqr: LqrConfig,
    pub integrator: Integrator,
    pub transient_rule: TransientRule,
    /// Episode length (s).
    pub duration: f64,
    /// Reference step of the tracking experiment.
    pub step_time: f64,
    pub step_to: f64,
    /// Initial state and constant reference of the user-defined scenario.
    pub custom_initial: PlantState,
    pub custom_reference: f64,
}

impl Default for BenchmarkSetup {
    fn default() -> Self {
        BenchmarkSetup {
            params: CartPoleParams::default(),
            rshac: RsHacConfig::default(),
            fuzzy: FuzzyConfig::default(),
            lqr: LqrConfig::default(),
            integrator: Integrator::Rk4,
            transient_rule: TransientRule::default(),
            duration: 10.0,
            step_time: 1.0,
            step_to: 0.2,
            custom_initial: PlantState::new(0.0, 0.0, 15f64.to_radians(), 0.0),
            custom_reference: 0.0,
        }
    }
}

impl BenchmarkSetup {
    pub fn build_controller(&self, kind: ControllerKind) -> Result<Box<dyn Controller>> {
        Ok(match kind {
            ControllerKind::RsHac => Box::new(RsHacController::new(&self.rshac)?),
            ControllerKind::Fuzzy => Box::new(FuzzyController::new(&self.fuzzy)?),
            ControllerKind::Lqr => Box::new(LqrController::new(&self.lqr, &self.params)?),
        })
    }

    fn spec(&self, controller: ControllerKind, initial: PlantState, reference: Reference) -> EpisodeSpec {
        EpisodeSpec {
            controller,
            initial,
            reference,
            duration: self.duration,
            sample_time: self.params.sample_time,
            integrator: self.integrator,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    /// Stabilization from a tilted pendulum.
    Stabilization,
    /// Tracking a step in the cart position reference.
    Tracking,
    /// A single user-defined initial state and constant reference.
    Custom,
}

impl Experiment {
    /// The two benchmark experiments.
    pub const ALL: [Experiment; 2] = [Experiment::Stabilization, Experiment::Tracking];

    pub fn id(self) -> &'static str {
        match self {
            Experiment::Stabilization => "exp1",
            Experiment::Tracking => "exp2",
            Experiment::Custom => "custom",
        }
    }
}

impl std::str::FromStr for Experiment {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp1" => Ok(Experiment::Stabilization),
            "exp2" => Ok(Experiment::Tracking),
            "custom" => Ok(Experiment::Custom),
            other => Err(invalid("experiment", format!("unknown experiment `{other}`"))),
        }
    }
}

/// One named initial condition / reference pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub experiment: Experiment,
    pub name: String,
    pub initial: PlantState,
    pub reference: Reference,
}

pub fn scenarios(experiment: Experiment, setup: &BenchmarkSetup) -> Vec<Scenario> {
    match experiment {
        Experiment::Stabilization => EXP1_ANGLES_DEG
            .iter()
            .map(|deg| Scenario {
                experiment,
                name: format!("q0={deg}deg"),
                initial: PlantState::new(0.0, 0.0, deg.to_radians(), 0.0),
                reference: Reference::Constant(0.0),
            })
            .collect(),
        Experiment::Tracking => vec![Scenario {
            experiment,
            name: format!("x_ref={}m", setup.step_to),
            initial: PlantState::ZERO,
            reference: Reference::Step {
                at: setup.step_time,
                from: 0.0,
                to: setup.step_to,
            },
        }],
        Experiment::Custom => vec![Scenario {
            experiment,
            name: "custom".to_string(),
            initial: setup.custom_initial,
            reference: Reference::Constant(setup.custom_reference),
        }],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub controller: ControllerKind,
    pub scenario: Scenario,
    pub trajectory: Trajectory,
    pub metrics: Metrics,
}

/// Results of a batch of episodes, in controller-major order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub cells: Vec<Cell>,
}

impl ResultTable {
    pub fn get(&self, controller: ControllerKind, scenario: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.controller == controller && c.scenario.name == scenario)
    }

    pub fn scenario_names(&self, experiment: Experiment) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for c in self.cells.iter().filter(|c| c.scenario.experiment == experiment) {
            if !names.contains(&c.scenario.name.as_str()) {
                names.push(&c.scenario.name);
            }
        }
        names
    }

    pub fn controllers(&self) -> Vec<ControllerKind> {
        ControllerKind::ALL
            .into_iter()
            .filter(|k| self.cells.iter().any(|c| c.controller == *k))
            .collect()
    }

    pub fn all_stabilized(&self) -> bool {
        self.cells.iter().all(|c| c.metrics.stabilized())
    }

    pub fn extend(&mut self, other: ResultTable) {
        self.cells.extend(other.cells);
    }
}

/// Runs every controller on every scenario of the given experiments.
/// Episodes are independent and run on scoped threads.
pub fn run_experiments(
    setup: &BenchmarkSetup,
    experiments: &[Experiment],
    controllers: &[ControllerKind],
) -> Result<ResultTable> {
    let built: Vec<(ControllerKind, Box<dyn Controller>)> = controllers
        .iter()
        .map(|k| Ok((*k, setup.build_controller(*k)?)))
        .collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (kind, ctrl) in &built {
        for exp in experiments {
            for sc in scenarios(*exp, setup) {
                jobs.push((*kind, ctrl.as_ref(), sc));
            }
        }
    }
    let results: Vec<Result<Cell>> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|(kind, ctrl, sc)| {
                s.spawn(move || {
                    let spec = setup.spec(kind, sc.initial, sc.reference);
                    let trajectory = run_episode(&spec, ctrl, &setup.params)?;
                    let metrics = evaluate(&trajectory, setup.transient_rule);
                    Ok(Cell {
                        controller: kind,
                        scenario: sc,
                        trajectory,
                        metrics,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("episode thread panicked"))
            .collect()
    });
    Ok(ResultTable {
        cells: results.into_iter().collect::<Result<_>>()?,
    })
}

/// Stabilization from 10°, 20° and 30° for all three controllers.
pub fn run_experiment1(setup: &BenchmarkSetup) -> Result<ResultTable> {
    run_experiments(setup, &[Experiment::Stabilization], &ControllerKind::ALL)
}

/// Position step for all three controllers.
pub fn run_experiment2(setup: &BenchmarkSetup) -> Result<ResultTable> {
    run_experiments(setup, &[Experiment::Tracking], &ControllerKind::ALL)
}
