//! Per-task timing and cost formulas.
//!
//! Timing quantities are kept in milliseconds throughout. CPU cost is billed
//! per second, so execution time is converted to seconds only inside
//! [`computation_cost`].

use serde::{Deserialize, Serialize};

use crate::model::{Node, Task};

/// How a negative violation cost (lateness within the QoS tolerance) is treated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationPolicy {
    /// Negative values are clamped to zero.
    #[default]
    Clamped,
    /// The raw linear value is returned, possibly negative.
    Raw,
}

impl ViolationPolicy {
    pub fn from_raw_flag(raw: bool) -> Self {
        if raw {
            Self::Raw
        } else {
            Self::Clamped
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Clamped => "clamped",
            Self::Raw => "raw",
        }
    }
}

/// Execution time of `task` on `node` [ms].
#[inline]
pub fn execution_time(task: &Task, node: &Node) -> f64 {
    task.size_mi / node.cpu_mips * 1000.0
}

/// Processing plus memory cost [G$].
#[inline]
pub fn computation_cost(task: &Task, node: &Node) -> f64 {
    node.cost_cpu * (execution_time(task, node) / 1000.0) + node.cost_mem * task.mem_mb
}

/// Bandwidth cost for moving the task's input and output [G$].
#[inline]
pub fn communication_cost(task: &Task, node: &Node) -> f64 {
    node.cost_bw * task.bandwidth_mb()
}

/// Round-trip delay plus execution plus queueing [ms].
#[inline]
pub fn response_time(task: &Task, node: &Node, waiting_ms: f64) -> f64 {
    2.0 * node.delay_ms + execution_time(task, node) + waiting_ms
}

/// Deadline overshoot as a percentage of the deadline; zero when on time.
#[inline]
pub fn violation_pct(response_ms: f64, deadline_ms: f64) -> f64 {
    (response_ms - deadline_ms).max(0.0) / deadline_ms * 100.0
}

/// Penalty for the violation percentage beyond the tolerance `100 - qos` [G$].
#[inline]
pub fn violation_cost(v_pct: f64, qos_pct: f64, penalty_per_pct: f64, policy: ViolationPolicy) -> f64 {
    let raw = (v_pct - (100.0 - qos_pct)) * penalty_per_pct;
    match policy {
        ViolationPolicy::Clamped => raw.max(0.0),
        ViolationPolicy::Raw => raw,
    }
}

/// Every cost component of placing one task on one node after `waiting_ms` of queueing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaskCost {
    pub response_ms: f64,
    pub violation_pct: f64,
    pub c_comp: f64,
    pub c_comm: f64,
    pub c_viol: f64,
}

impl TaskCost {
    pub fn compute(task: &Task, node: &Node, waiting_ms: f64, policy: ViolationPolicy) -> Self {
        let response_ms = response_time(task, node, waiting_ms);
        let v = violation_pct(response_ms, task.deadline_ms);
        Self {
            response_ms,
            violation_pct: v,
            c_comp: computation_cost(task, node),
            c_comm: communication_cost(task, node),
            c_viol: violation_cost(v, task.qos_pct, task.penalty_per_pct, policy),
        }
    }

    pub fn total(&self) -> f64 {
        self.c_comp + self.c_comm + self.c_viol
    }

    pub fn deadline_met(&self, task: &Task) -> bool {
        self.response_ms <= task.deadline_ms
    }
}
