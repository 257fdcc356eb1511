//! TOML configuration shared by the CLI and the harness.
//!
//! ```toml
//! seed = 7
//!
//! [experiment]
//! builtin = 2          # start from a builtin sweep, then override below
//! trials = 3
//! schedulers = ["min-v", "min-ccv", "rr", "random", "ga"]
//!
//! [genetic]
//! generations = 200
//!
//! [tasks]              # task distribution overrides
//! type_weights = [0.5, 0.25, 0.25]
//!
//! [policy]
//! raw_violation_cost = false
//!
//! [exact]
//! budget = 10000000
//! ```
//!
//! Without `builtin`, `sweep`, `values`, and the fixed counts must be given.
//! A `[nodes.fog]` or `[nodes.cloud]` table replaces that kind's ranges
//! completely.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cost::ViolationPolicy;
use crate::error::IoError;
use crate::harness::{builtin_experiment, ExperimentSpec, SweepVariable};
use crate::schedulers::{GeneticParams, SchedulerConfig, SchedulerKind, DEFAULT_ENUMERATION_BUDGET};
use crate::workload::{NodeDistribution, TaskDistribution};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub builtin: Option<u32>,
    pub name: Option<String>,
    pub sweep: Option<SweepVariable>,
    pub values: Option<Vec<usize>>,
    pub tasks: Option<usize>,
    pub fog: Option<usize>,
    pub cloud: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub schedulers: Option<Vec<SchedulerKind>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolicySection {
    pub raw_violation_cost: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExactSection {
    pub budget: u64,
}

impl Default for ExactSection {
    fn default() -> Self {
        Self {
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    pub experiment: ExperimentSection,
    pub genetic: GeneticParams,
    pub tasks: TaskDistribution,
    pub nodes: NodeDistribution,
    pub policy: PolicySection,
    pub exact: ExactSection,
}

impl Config {
    pub fn parse(text: &str, path: &Path) -> Result<Self, IoError> {
        let config: Config = toml::from_str(text).map_err(|e| IoError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let invalid = |message: String| IoError::Config {
            path: path.to_path_buf(),
            message,
        };
        config.tasks.validate().map_err(|e| invalid(format!("[tasks] {e}")))?;
        config.nodes.validate().map_err(|e| invalid(format!("[nodes] {e}")))?;
        config
            .genetic
            .validate()
            .map_err(|e| invalid(format!("[genetic] {e}")))?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| IoError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    pub fn policy(&self) -> ViolationPolicy {
        ViolationPolicy::from_raw_flag(self.policy.raw_violation_cost)
    }

    pub fn scheduler_config(&self) -> SchedulerConfig {
        SchedulerConfig {
            policy: self.policy(),
            genetic: self.genetic.clone(),
            exact_budget: self.exact.budget,
            seed: self.seed.unwrap_or(0),
        }
    }

    /// Resolves the `[experiment]` section, starting from `builtin` when set
    /// (or from `fallback_builtin` when the section names none).
    pub fn experiment_spec(&self, fallback_builtin: Option<u32>) -> Result<ExperimentSpec, String> {
        let e = &self.experiment;
        let mut spec = match e.builtin.or(fallback_builtin) {
            Some(which) => builtin_experiment(which).map_err(|err| err.to_string())?,
            None => {
                let missing = |field: &str| format!("[experiment] needs `builtin` or `{field}`");
                ExperimentSpec {
                    name: e.name.clone().unwrap_or_else(|| "custom".into()),
                    sweep: e.sweep.ok_or_else(|| missing("sweep"))?,
                    values: e.values.clone().ok_or_else(|| missing("values"))?,
                    tasks: 0,
                    fog: 0,
                    cloud: 0,
                    trials: 10,
                    seed: 1,
                    schedulers: SchedulerKind::HEURISTICS.to_vec(),
                    task_dist: TaskDistribution::default(),
                    node_dist: NodeDistribution::default(),
                    genetic: GeneticParams::default(),
                    policy: ViolationPolicy::Clamped,
                    exact_budget: DEFAULT_ENUMERATION_BUDGET,
                }
            }
        };
        if let Some(name) = &e.name {
            spec.name = name.clone();
        }
        if let Some(sweep) = e.sweep {
            spec.sweep = sweep;
        }
        if let Some(values) = &e.values {
            spec.values = values.clone();
        }
        if let Some(v) = e.tasks {
            spec.tasks = v;
        }
        if let Some(v) = e.fog {
            spec.fog = v;
        }
        if let Some(v) = e.cloud {
            spec.cloud = v;
        }
        if let Some(v) = e.trials {
            spec.trials = v;
        }
        if let Some(v) = e.seed.or(self.seed) {
            spec.seed = v;
        }
        if let Some(v) = &e.schedulers {
            spec.schedulers = v.clone();
        }
        spec.task_dist = self.tasks.clone();
        spec.node_dist = self.nodes.clone();
        spec.genetic = self.genetic.clone();
        spec.policy = self.policy();
        spec.exact_budget = self.exact.budget;
        spec.validate().map_err(|err| err.to_string())?;
        Ok(spec)
    }
}
