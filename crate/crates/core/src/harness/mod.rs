//! Parameter sweeps over generated workloads.
//!
//! Every `(sweep value, trial)` pair gets its own workload, derived from the
//! master seed with [`trial_seed`], and every scheduler in the experiment runs
//! on that identical workload. Results are reduced to avg/min/max per
//! `(sweep value, scheduler)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::ViolationPolicy;
use crate::schedulers::{GeneticParams, SchedulerKind, DEFAULT_ENUMERATION_BUDGET};
use crate::workload::{derive_seed, NodeDistribution, TaskDistribution};

mod report;
mod run;

pub use report::{emit_report, emit_timings, render_csv, render_json, ReportFormat, ReportMetadata};
pub use run::{run_experiment, workload_hash, AggregateRow, ExperimentResult, Stat, TrialOutcome};

#[derive(Debug, Error, PartialEq)]
pub enum HarnessError {
    #[error("unknown builtin experiment {0} (expected 1, 2 or 3)")]
    UnknownBuiltin(u32),
    #[error("invalid experiment: {0}")]
    Invalid(String),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

/// Which count an experiment varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Tasks,
    Fog,
    Cloud,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Tasks => "tasks",
            SweepVariable::Fog => "fog",
            SweepVariable::Cloud => "cloud",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub sweep: SweepVariable,
    pub values: Vec<usize>,
    /// Fixed counts; the swept one is ignored.
    pub tasks: usize,
    pub fog: usize,
    pub cloud: usize,
    pub trials: usize,
    pub seed: u64,
    pub schedulers: Vec<SchedulerKind>,
    pub task_dist: TaskDistribution,
    pub node_dist: NodeDistribution,
    pub genetic: GeneticParams,
    pub policy: ViolationPolicy,
    pub exact_budget: u64,
}

impl ExperimentSpec {
    /// `(tasks, fog, cloud)` at one sweep point.
    pub fn counts_at(&self, value: usize) -> (usize, usize, usize) {
        match self.sweep {
            SweepVariable::Tasks => (value, self.fog, self.cloud),
            SweepVariable::Fog => (self.tasks, value, self.cloud),
            SweepVariable::Cloud => (self.tasks, self.fog, value),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: String| Err(HarnessError::Invalid(msg));
        if self.values.is_empty() {
            return fail("sweep values are empty".into());
        }
        if self.values.contains(&0) {
            return fail("sweep values must be positive".into());
        }
        if self.trials == 0 {
            return fail("trials must be >= 1".into());
        }
        if self.schedulers.is_empty() {
            return fail("no schedulers selected".into());
        }
        for &v in &self.values {
            let (n, f, c) = self.counts_at(v);
            if n == 0 {
                return fail("task count must be >= 1".into());
            }
            if f + c == 0 {
                return fail("at least one node is required".into());
            }
        }
        self.task_dist
            .validate()
            .or_else(|e| fail(format!("task distribution: {e}")))?;
        self.node_dist
            .validate()
            .or_else(|e| fail(format!("node distribution: {e}")))?;
        self.genetic.validate().or_else(|e| fail(e.to_string()))?;
        Ok(())
    }
}

/// The three sweeps: task count, fog-node count and cloud-node count.
pub fn builtin_experiment(which: u32) -> Result<ExperimentSpec, HarnessError> {
    let (name, sweep, values, tasks, fog, cloud) = match which {
        1 => (
            "exp1-tasks",
            SweepVariable::Tasks,
            vec![50, 100, 150, 200, 250, 300],
            0,
            30,
            15,
        ),
        2 => ("exp2-fog", SweepVariable::Fog, vec![10, 20, 30, 40, 50], 200, 0, 15),
        3 => ("exp3-cloud", SweepVariable::Cloud, vec![5, 10, 15, 20, 25], 200, 30, 0),
        other => return Err(HarnessError::UnknownBuiltin(other)),
    };
    Ok(ExperimentSpec {
        name: name.to_string(),
        sweep,
        values,
        tasks,
        fog,
        cloud,
        trials: 10,
        seed: 1,
        schedulers: SchedulerKind::HEURISTICS.to_vec(),
        task_dist: TaskDistribution::default(),
        node_dist: NodeDistribution::default(),
        genetic: GeneticParams::default(),
        policy: ViolationPolicy::Clamped,
        exact_budget: DEFAULT_ENUMERATION_BUDGET,
    })
}

/// Seed of one trial. Depends only on the master seed, the sweep value and
/// the trial index, so adding sweep points leaves existing trials unchanged.
pub fn trial_seed(master: u64, sweep_value: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(master, sweep_value as u64), trial as u64)
}
