//! Task-to-node schedulers behind a single entry point.
//!
//! * [`min_ccv`]: greedy per-task minimum of computation, communication and violation cost.
//! * [`min_v`]: deadline-ordered, prefers nodes that meet the deadline and then the cheapest.
//! * [`round_robin`], [`random`]: baselines.
//! * [`genetic`]: seeded GA over assignment chromosomes, fitness is the total cost.
//! * [`exact`]: exhaustive enumeration, used as an optimality oracle on small instances.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cost::ViolationPolicy;
use crate::error::ScheduleError;
use crate::model::{Instance, Node};
use crate::schedule::{evaluate_schedule, CostReport, Schedule};

pub mod exact;
pub mod genetic;
pub mod min_ccv;
pub mod min_v;
pub mod random;
pub mod round_robin;

pub use exact::{exact, DEFAULT_ENUMERATION_BUDGET};
pub use genetic::{genetic, GeneticParams};
pub use min_ccv::min_ccv;
pub use min_v::min_v;
pub use random::random_scheduler;
pub use round_robin::round_robin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchedulerKind {
    #[serde(rename = "min-ccv")]
    MinCcv,
    #[serde(rename = "min-v")]
    MinV,
    #[serde(rename = "rr")]
    RoundRobin,
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "ga")]
    Genetic,
    #[serde(rename = "exact")]
    Exact,
}

impl SchedulerKind {
    pub const ALL: [SchedulerKind; 6] = [
        SchedulerKind::MinCcv,
        SchedulerKind::MinV,
        SchedulerKind::RoundRobin,
        SchedulerKind::Random,
        SchedulerKind::Genetic,
        SchedulerKind::Exact,
    ];

    /// Every scheduler that scales past toy sizes.
    pub const HEURISTICS: [SchedulerKind; 5] = [
        SchedulerKind::MinCcv,
        SchedulerKind::MinV,
        SchedulerKind::RoundRobin,
        SchedulerKind::Random,
        SchedulerKind::Genetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::MinCcv => "min-ccv",
            SchedulerKind::MinV => "min-v",
            SchedulerKind::RoundRobin => "rr",
            SchedulerKind::Random => "random",
            SchedulerKind::Genetic => "ga",
            SchedulerKind::Exact => "exact",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|k| k.name()).collect::<Vec<_>>().join(", ")
    }

    /// Whether the output depends on the seed.
    pub fn is_seeded(self) -> bool {
        matches!(self, SchedulerKind::Random | SchedulerKind::Genetic)
    }
}

impl fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchedulerKind {
    type Err = ScheduleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| ScheduleError::UnknownScheduler {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// Knobs shared by all schedulers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchedulerConfig {
    pub policy: ViolationPolicy,
    pub genetic: GeneticParams,
    pub exact_budget: u64,
    pub seed: u64,
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        Self {
            policy: ViolationPolicy::Clamped,
            genetic: GeneticParams::default(),
            exact_budget: DEFAULT_ENUMERATION_BUDGET,
            seed: 0,
        }
    }
}

/// A schedule together with its evaluation and the time spent producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct SchedulerOutcome {
    pub kind: SchedulerKind,
    pub schedule: Schedule,
    pub report: CostReport,
    /// Scheduling time only, evaluation excluded [ms].
    pub wall_time_ms: f64,
}

/// Runs one scheduler and evaluates its output.
pub fn run(
    kind: SchedulerKind,
    instance: &Instance,
    config: &SchedulerConfig,
) -> Result<SchedulerOutcome, ScheduleError> {
    let start = Instant::now();
    let schedule = match kind {
        SchedulerKind::MinCcv => min_ccv(instance, config.policy)?,
        SchedulerKind::MinV => min_v(instance, config.policy)?,
        SchedulerKind::RoundRobin => round_robin(instance)?,
        SchedulerKind::Random => random_scheduler(instance, config.seed)?,
        SchedulerKind::Genetic => genetic(instance, &config.genetic, config.policy, config.seed)?,
        SchedulerKind::Exact => exact(instance, config.policy, config.exact_budget)?,
    };
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let report = evaluate_schedule(instance, &schedule, config.policy)?;
    Ok(SchedulerOutcome {
        kind,
        schedule,
        report,
        wall_time_ms,
    })
}

/// Tracks per-node busy time while tasks are placed one at a time.
pub(crate) struct Dispatcher<'a> {
    instance: &'a Instance,
    assignment: Vec<usize>,
    order: Vec<usize>,
    available: Vec<f64>,
}

impl<'a> Dispatcher<'a> {
    pub(crate) fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            assignment: vec![usize::MAX; instance.num_tasks()],
            order: Vec::with_capacity(instance.num_tasks()),
            available: vec![0.0; instance.num_nodes()],
        }
    }

    #[inline]
    pub(crate) fn available(&self, node_idx: usize) -> f64 {
        self.available[node_idx]
    }

    pub(crate) fn place(&mut self, task_idx: usize, node_idx: usize) {
        let (task, node) = (&self.instance.tasks[task_idx], &self.instance.nodes[node_idx]);
        self.assignment[task_idx] = node_idx;
        self.order.push(task_idx);
        self.available[node_idx] += crate::cost::execution_time(task, node);
    }

    pub(crate) fn finish(self) -> Schedule {
        Schedule {
            assignment: self.assignment,
            dispatch_order: self.order,
            available_time_ms: self.available,
        }
    }
}

/// Memory-feasible node indices for every task, or the first task that fits nowhere.
pub(crate) fn feasibility(instance: &Instance) -> Result<Vec<Vec<usize>>, ScheduleError> {
    (0..instance.num_tasks())
        .map(|i| {
            let nodes = instance.feasible_nodes(i);
            if nodes.is_empty() {
                Err(infeasible(instance, i))
            } else {
                Ok(nodes)
            }
        })
        .collect()
}

pub(crate) fn infeasible(instance: &Instance, task_idx: usize) -> ScheduleError {
    let task = &instance.tasks[task_idx];
    ScheduleError::InfeasibleTask {
        task: task.id,
        mem_mb: task.mem_mb,
    }
}

/// Running argmin over candidate nodes; equal scores go to the lowest node id.
pub(crate) struct Best {
    score: f64,
    node_idx: Option<usize>,
    node_id: u32,
}

impl Best {
    pub(crate) fn new() -> Self {
        Self {
            score: f64::INFINITY,
            node_idx: None,
            node_id: u32::MAX,
        }
    }

    #[inline]
    pub(crate) fn offer(&mut self, score: f64, node_idx: usize, node: &Node) {
        let better = match self.node_idx {
            None => true,
            Some(_) => score < self.score || (score == self.score && node.id < self.node_id),
        };
        if better {
            self.score = score;
            self.node_idx = Some(node_idx);
            self.node_id = node.id;
        }
    }

    pub(crate) fn get(&self) -> Option<usize> {
        self.node_idx
    }
}

/// Task indices sorted ascending by deadline, ties by task id.
pub fn deadline_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.num_tasks()).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (&instance.tasks[a], &instance.tasks[b]);
        ta.deadline_ms.total_cmp(&tb.deadline_ms).then(ta.id.cmp(&tb.id))
    });
    order
}
