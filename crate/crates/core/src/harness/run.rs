use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::harness::{trial_seed, ExperimentSpec, HarnessError};
use crate::model::{Instance, NodeKind};
use crate::schedulers::{run, SchedulerConfig, SchedulerKind};
use crate::workload::{derive_seed, generate_nodes, generate_tasks, to_json};

/// Average, minimum and maximum of one metric over trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub avg: f64,
    pub min: f64,
    pub max: f64,
}

impl Stat {
    /// NaN everywhere for an empty sample.
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                avg: f64::NAN,
                min: f64::NAN,
                max: f64::NAN,
            };
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let avg = values.iter().sum::<f64>() / values.len() as f64;
        Self {
            // The mean of equal values can round past them.
            avg: avg.clamp(min, max),
            min,
            max,
        }
    }
}

/// One scheduler on one generated workload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub sweep_value: usize,
    pub trial: usize,
    pub scheduler: SchedulerKind,
    pub workload_hash: String,
    /// Tasks whose only memory-feasible nodes are cloud nodes.
    pub cloud_only_tasks: usize,
    pub pdst_pct: f64,
    pub makespan_ms: f64,
    pub c_viol: f64,
    pub c_comp: f64,
    pub c_comm: f64,
    pub total: f64,
    pub wall_time_ms: f64,
    /// Set when the scheduler failed; metrics are NaN then.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub sweep_value: usize,
    pub scheduler: SchedulerKind,
    /// Trials that produced a schedule.
    pub trials: usize,
    /// Trials where the scheduler failed; these are excluded from the metrics.
    pub failed_trials: usize,
    pub pdst: Stat,
    pub makespan_ms: Stat,
    pub c_viol: Stat,
    pub c_comp: Stat,
    pub c_comm: Stat,
    pub total: Stat,
    pub mean_wall_ms: f64,
    /// Digest over the workloads of all trials at this sweep value.
    pub workload_hash: String,
    pub cloud_only_tasks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    /// Sorted by `(sweep value, scheduler)`.
    pub rows: Vec<AggregateRow>,
    /// Sorted by `(sweep value, trial, scheduler)`.
    pub outcomes: Vec<TrialOutcome>,
}

impl ExperimentResult {
    pub fn row(&self, sweep_value: usize, scheduler: SchedulerKind) -> Option<&AggregateRow> {
        self.rows
            .iter()
            .find(|r| r.sweep_value == sweep_value && r.scheduler == scheduler)
    }
}

/// First 8 bytes of the SHA-256 of the instance JSON, hex-encoded.
pub fn workload_hash(instance: &Instance) -> String {
    let digest = Sha256::digest(to_json(instance).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn cloud_only_tasks(instance: &Instance) -> usize {
    (0..instance.num_tasks())
        .filter(|&i| {
            let feasible = instance.feasible_nodes(i);
            !feasible.is_empty() && feasible.iter().all(|&j| instance.nodes[j].kind == NodeKind::Cloud)
        })
        .count()
}

/// The workload of one trial.
pub(crate) fn trial_instance(spec: &ExperimentSpec, sweep_value: usize, trial: usize) -> Result<Instance, String> {
    let (n, f, c) = spec.counts_at(sweep_value);
    let seed = trial_seed(spec.seed, sweep_value, trial);
    let tasks = generate_tasks(n, &spec.task_dist, derive_seed(seed, 0));
    let nodes = generate_nodes(f, c, &spec.node_dist, derive_seed(seed, 1));
    Instance::new(tasks, nodes).map_err(|e| e.to_string())
}

fn run_trial(spec: &ExperimentSpec, sweep_value: usize, trial: usize) -> Vec<TrialOutcome> {
    let seed = trial_seed(spec.seed, sweep_value, trial);
    let instance = trial_instance(spec, sweep_value, trial);
    let (hash, cloud_only) = match &instance {
        Ok(inst) => (workload_hash(inst), cloud_only_tasks(inst)),
        Err(_) => (String::new(), 0),
    };
    let config = SchedulerConfig {
        policy: spec.policy,
        genetic: spec.genetic.clone(),
        exact_budget: spec.exact_budget,
        seed: derive_seed(seed, 2),
    };
    spec.schedulers
        .iter()
        .map(|&kind| {
            let result = instance
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|inst| run(kind, inst, &config).map_err(|e| e.to_string()));
            let mut out = TrialOutcome {
                sweep_value,
                trial,
                scheduler: kind,
                workload_hash: hash.clone(),
                cloud_only_tasks: cloud_only,
                pdst_pct: f64::NAN,
                makespan_ms: f64::NAN,
                c_viol: f64::NAN,
                c_comp: f64::NAN,
                c_comm: f64::NAN,
                total: f64::NAN,
                wall_time_ms: f64::NAN,
                error: None,
            };
            match result {
                Ok(o) => {
                    out.pdst_pct = o.report.pdst_pct;
                    out.makespan_ms = o.report.makespan_ms;
                    out.c_viol = o.report.total_viol;
                    out.c_comp = o.report.total_comp;
                    out.c_comm = o.report.total_comm;
                    out.total = o.report.total;
                    out.wall_time_ms = o.wall_time_ms;
                }
                Err(e) => out.error = Some(e),
            }
            out
        })
        .collect()
}

fn aggregate(spec: &ExperimentSpec, outcomes: &[TrialOutcome]) -> Vec<AggregateRow> {
    let mut schedulers = spec.schedulers.clone();
    schedulers.sort();
    schedulers.dedup();
    let mut values = spec.values.clone();
    values.sort_unstable();
    values.dedup();

    let mut rows = Vec::new();
    for &value in &values {
        let at_value: Vec<&TrialOutcome> = outcomes.iter().filter(|o| o.sweep_value == value).collect();
        // One hash per trial, in trial order.
        let mut trial_hashes: Vec<(usize, &str, usize)> = at_value
            .iter()
            .map(|o| (o.trial, o.workload_hash.as_str(), o.cloud_only_tasks))
            .collect();
        trial_hashes.sort();
        trial_hashes.dedup();
        let mut hasher = Sha256::new();
        for (_, h, _) in &trial_hashes {
            hasher.update(h.as_bytes());
        }
        let combined: String = hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect();
        let cloud_only: usize = trial_hashes.iter().map(|t| t.2).sum();

        for &kind in &schedulers {
            let runs: Vec<&TrialOutcome> = at_value.iter().copied().filter(|o| o.scheduler == kind).collect();
            let ok: Vec<&TrialOutcome> = runs.iter().copied().filter(|o| o.error.is_none()).collect();
            let metric = |f: fn(&TrialOutcome) -> f64| Stat::of(&ok.iter().map(|o| f(o)).collect::<Vec<_>>());
            let mean_wall_ms = if ok.is_empty() {
                f64::NAN
            } else {
                ok.iter().map(|o| o.wall_time_ms).sum::<f64>() / ok.len() as f64
            };
            rows.push(AggregateRow {
                sweep_value: value,
                scheduler: kind,
                trials: ok.len(),
                failed_trials: runs.len() - ok.len(),
                pdst: metric(|o| o.pdst_pct),
                makespan_ms: metric(|o| o.makespan_ms),
                c_viol: metric(|o| o.c_viol),
                c_comp: metric(|o| o.c_comp),
                c_comm: metric(|o| o.c_comm),
                total: metric(|o| o.total),
                mean_wall_ms,
                workload_hash: combined.clone(),
                cloud_only_tasks: cloud_only,
            });
        }
    }
    rows
}

/// Runs every scheduler on every `(sweep value, trial)` workload.
///
/// Trials run in parallel on `jobs` threads (rayon's default when `None`).
/// The result does not depend on the thread count.
pub fn run_experiment(spec: &ExperimentSpec, jobs: Option<usize>) -> Result<ExperimentResult, HarnessError> {
    spec.validate()?;
    let points: Vec<(usize, usize)> = spec
        .values
        .iter()
        .flat_map(|&v| (0..spec.trials).map(move |t| (v, t)))
        .collect();
    let work = || -> Vec<TrialOutcome> {
        points
            .par_iter()
            .flat_map_iter(|&(v, t)| run_trial(spec, v, t))
            .collect()
    };
    let mut outcomes = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    outcomes.sort_by_key(|o| (o.sweep_value, o.trial, o.scheduler));
    outcomes.dedup_by(|a, b| (a.sweep_value, a.trial, a.scheduler) == (b.sweep_value, b.trial, b.scheduler));
    let rows = aggregate(spec, &outcomes);
    Ok(ExperimentResult {
        spec: spec.clone(),
        rows,
        outcomes,
    })
}
