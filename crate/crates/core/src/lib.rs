//! Cost-aware scheduling of bag-of-tasks workloads on volunteer fog and
//! cloud nodes.
//!
//! A task placed on a node costs computation (CPU time and memory),
//! communication (input plus output transfer) and, when it finishes past its
//! deadline by more than its QoS tolerance, a violation penalty. The
//! [`schedulers`] module provides two cost-aware heuristics (Min-CCV and
//! Min-V), three baselines and an exhaustive oracle; [`harness`] sweeps them
//! over generated workloads.
//!
//! ```
//! use fogsched::{evaluate_schedule, min_v, toy_instance, ViolationPolicy};
//!
//! let instance = toy_instance();
//! let schedule = min_v(&instance, ViolationPolicy::Clamped).unwrap();
//! let report = evaluate_schedule(&instance, &schedule, ViolationPolicy::Clamped).unwrap();
//! assert_eq!(report.violated, 3);
//! ```

pub mod config;
pub mod cost;
pub mod error;
pub mod harness;
pub mod model;
pub mod schedule;
pub mod schedulers;
pub mod workload;

#[cfg(test)]
mod testutil;

pub use config::Config;
pub use cost::{
    communication_cost, computation_cost, execution_time, response_time, violation_cost, violation_pct, TaskCost,
    ViolationPolicy,
};
pub use error::{IoError, ModelError, ScheduleError};
pub use harness::{builtin_experiment, emit_report, run_experiment, AggregateRow, ExperimentSpec, ReportFormat};
pub use model::{Instance, Node, NodeKind, Task};
pub use schedule::{evaluate_schedule, CostReport, Schedule};
pub use schedulers::{
    exact, genetic, min_ccv, min_v, random_scheduler, round_robin, run, GeneticParams, SchedulerConfig, SchedulerKind,
    SchedulerOutcome,
};
pub use workload::{generate_nodes, generate_tasks, load_instance, save_instance, toy_instance};
