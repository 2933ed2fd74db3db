//! Closed-loop episodes, performance indices and the benchmark experiments.

mod compare;
mod episode;
mod experiments;
mod metrics;
mod report;

pub use compare::{compare, indices_for, relative_change, Difference, Index};
pub use episode::{run_episode, EpisodeSpec, Reference, Trajectory};
pub use experiments::{
    run_experiment1, run_experiment2, run_experiments, scenarios, BenchmarkSetup, Cell,
    Experiment, ResultTable, Scenario, EXP1_ANGLES_DEG,
};
pub use metrics::{
    control_effort, evaluate, holds_after_dwell, max_position_deviation, overshoot_percent, stability_satisfied,
    transient_time, Metrics, Transient, TransientRule, ANGLE_TOLERANCE_DEG, DEFAULT_DWELL,
    POSITION_TOLERANCE, RATE_TOLERANCE_DEG, VELOCITY_TOLERANCE,
};
pub use report::{
    export_all, format_comparison, format_metric, format_summary, trajectory_file_name,
    write_metrics_csv, write_trajectory_csv, METRICS_HEADER, TRAJECTORY_HEADER,
};
