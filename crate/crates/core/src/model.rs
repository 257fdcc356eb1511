//! Domain types: tasks of a bag-of-tasks batch and the volunteer nodes that run them.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// One independent unit of a bag-of-tasks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub id: u32,
    /// Instruction count [MI].
    pub size_mi: f64,
    /// Required memory [MB].
    pub mem_mb: f64,
    /// Input file size [MB].
    pub input_mb: f64,
    /// Output file size [MB].
    pub output_mb: f64,
    /// Deadline [ms].
    pub deadline_ms: f64,
    /// Required QoS in (0, 100].
    pub qos_pct: f64,
    /// Penalty per violation percent [G$].
    pub penalty_per_pct: f64,
}

impl Task {
    /// Bandwidth demand: the sum of input and output file sizes [MB].
    pub fn bandwidth_mb(&self) -> f64 {
        self.input_mb + self.output_mb
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |reason: &str| {
            Err(ModelError::InvalidTask {
                task: self.id,
                reason: reason.to_string(),
            })
        };
        let fields = [
            self.size_mi,
            self.mem_mb,
            self.input_mb,
            self.output_mb,
            self.deadline_ms,
            self.qos_pct,
            self.penalty_per_pct,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return fail("all attributes must be finite");
        }
        if self.size_mi <= 0.0 {
            return fail("size_mi must be > 0");
        }
        if self.mem_mb <= 0.0 {
            return fail("mem_mb must be > 0");
        }
        if self.input_mb < 0.0 || self.output_mb < 0.0 {
            return fail("file sizes must be >= 0");
        }
        if self.deadline_ms <= 0.0 {
            return fail("deadline_ms must be > 0");
        }
        if self.qos_pct <= 0.0 || self.qos_pct > 100.0 {
            return fail("qos_pct must lie in (0, 100]");
        }
        if self.penalty_per_pct < 0.0 {
            return fail("penalty_per_pct must be >= 0");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Fog,
    Cloud,
}

/// A volunteer fog or cloud resource.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: u32,
    pub kind: NodeKind,
    /// Processing rate [MIPS].
    pub cpu_mips: f64,
    /// CPU usage cost [G$/s].
    pub cost_cpu: f64,
    /// Memory usage cost [G$/MB].
    pub cost_mem: f64,
    /// Bandwidth usage cost [G$/MB].
    pub cost_bw: f64,
    /// Memory capacity [MB].
    pub mem_mb: f64,
    /// One-way broker to node delay [ms].
    pub delay_ms: f64,
}

impl Node {
    pub fn fits(&self, task: &Task) -> bool {
        task.mem_mb <= self.mem_mb
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fail = |reason: &str| {
            Err(ModelError::InvalidNode {
                node: self.id,
                reason: reason.to_string(),
            })
        };
        let fields = [
            self.cpu_mips,
            self.cost_cpu,
            self.cost_mem,
            self.cost_bw,
            self.mem_mb,
            self.delay_ms,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return fail("all attributes must be finite");
        }
        if self.cpu_mips <= 0.0 {
            return fail("cpu_mips must be > 0");
        }
        if self.cost_cpu < 0.0 || self.cost_mem < 0.0 || self.cost_bw < 0.0 {
            return fail("unit costs must be >= 0");
        }
        if self.mem_mb <= 0.0 {
            return fail("mem_mb must be > 0");
        }
        if self.delay_ms < 0.0 {
            return fail("delay_ms must be >= 0");
        }
        Ok(())
    }
}

/// A scheduling problem: the batch of tasks and the pool of nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub tasks: Vec<Task>,
    pub nodes: Vec<Node>,
}

impl Instance {
    /// Builds an instance after checking every type invariant and id uniqueness.
    pub fn new(tasks: Vec<Task>, nodes: Vec<Node>) -> Result<Self, ModelError> {
        let instance = Self { tasks, nodes };
        instance.validate()?;
        Ok(instance)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.tasks.is_empty() {
            return Err(ModelError::NoTasks);
        }
        if self.nodes.is_empty() {
            return Err(ModelError::NoNodes);
        }
        let mut seen = HashSet::new();
        for task in &self.tasks {
            task.validate()?;
            if !seen.insert(task.id) {
                return Err(ModelError::DuplicateTaskId(task.id));
            }
        }
        seen.clear();
        for node in &self.nodes {
            node.validate()?;
            if !seen.insert(node.id) {
                return Err(ModelError::DuplicateNodeId(node.id));
            }
        }
        Ok(())
    }

    pub fn num_tasks(&self) -> usize {
        self.tasks.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Node indices whose memory can hold the task at `task_idx`.
    pub fn feasible_nodes(&self, task_idx: usize) -> Vec<usize> {
        let task = &self.tasks[task_idx];
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.fits(task))
            .map(|(j, _)| j)
            .collect()
    }
}
