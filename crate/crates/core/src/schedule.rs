//! Schedules and their evaluation against the cost model.
//!
//! Every node is a FIFO single-server queue. A task waits for the execution
//! time of every task dispatched to the same node before it, in the order
//! recorded by [`Schedule::dispatch_order`].

use serde::{Deserialize, Serialize};

use crate::cost::{execution_time, TaskCost, ViolationPolicy};
use crate::error::ModelError;
use crate::model::Instance;

/// Allocation of every task to exactly one node.
///
/// Tasks and nodes are referred to by their position in the [`Instance`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// `assignment[i]` is the node index of task `i`.
    pub assignment: Vec<usize>,
    /// Task indices in the order they were dispatched to their nodes.
    pub dispatch_order: Vec<usize>,
    /// Accumulated busy time per node index [ms].
    pub available_time_ms: Vec<f64>,
}

impl Schedule {
    /// Builds a schedule from an assignment, replaying `dispatch_order` to fill busy times.
    ///
    /// No constraint checking happens here; see [`evaluate_schedule`].
    pub fn from_assignment(instance: &Instance, assignment: Vec<usize>, dispatch_order: Vec<usize>) -> Self {
        let mut available = vec![0.0; instance.num_nodes()];
        for &i in &dispatch_order {
            if let Some(&j) = assignment.get(i) {
                if j < available.len() {
                    available[j] += execution_time(&instance.tasks[i], &instance.nodes[j]);
                }
            }
        }
        Self {
            assignment,
            dispatch_order,
            available_time_ms: available,
        }
    }

    /// Dispatches tasks in input order.
    pub fn in_input_order(instance: &Instance, assignment: Vec<usize>) -> Self {
        let order = (0..assignment.len()).collect();
        Self::from_assignment(instance, assignment, order)
    }

    /// Checks the memory and task constraints.
    pub fn check(&self, instance: &Instance) -> Result<(), ModelError> {
        let n = instance.num_tasks();
        if self.assignment.len() != n {
            return Err(ModelError::TaskConstraint(format!(
                "{} assignments for {} tasks",
                self.assignment.len(),
                n
            )));
        }
        if self.dispatch_order.len() != n {
            return Err(ModelError::TaskConstraint(format!(
                "dispatch order lists {} tasks, expected {}",
                self.dispatch_order.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &i in &self.dispatch_order {
            if i >= n || seen[i] {
                let what = if i >= n { "unknown" } else { "repeated" };
                return Err(ModelError::TaskConstraint(format!(
                    "{what} task index {i} in dispatch order"
                )));
            }
            seen[i] = true;
        }
        for (i, &j) in self.assignment.iter().enumerate() {
            let task = &instance.tasks[i];
            let Some(node) = instance.nodes.get(j) else {
                return Err(ModelError::TaskConstraint(format!(
                    "task {} assigned to unknown node index {j}",
                    task.id
                )));
            };
            if !node.fits(task) {
                return Err(ModelError::MemoryConstraint {
                    task: task.id,
                    node: node.id,
                    task_mem: task.mem_mb,
                    node_mem: node.mem_mb,
                });
            }
        }
        Ok(())
    }
}

/// Per-task and aggregate costs of a schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    /// Indexed like the instance's tasks.
    pub per_task: Vec<TaskCost>,
    pub total_comp: f64,
    pub total_comm: f64,
    pub total_viol: f64,
    pub total: f64,
    /// Percentage of deadline-satisfied tasks.
    pub pdst_pct: f64,
    /// Largest accumulated busy time over all nodes [ms].
    pub makespan_ms: f64,
    /// Number of tasks whose response time exceeds their deadline.
    pub violated: usize,
}

/// Replays the schedule and prices every task.
pub fn evaluate_schedule(
    instance: &Instance,
    schedule: &Schedule,
    policy: ViolationPolicy,
) -> Result<CostReport, ModelError> {
    schedule.check(instance)?;
    let n = instance.num_tasks();
    let mut available = vec![0.0; instance.num_nodes()];
    let mut per_task = vec![None; n];
    for &i in &schedule.dispatch_order {
        let j = schedule.assignment[i];
        let (task, node) = (&instance.tasks[i], &instance.nodes[j]);
        per_task[i] = Some(TaskCost::compute(task, node, available[j], policy));
        available[j] += execution_time(task, node);
    }
    let per_task: Vec<TaskCost> = per_task
        .into_iter()
        .map(|c| c.expect("dispatch order is a permutation"))
        .collect();

    let (total_comp, total_comm, total_viol) = component_sums(&per_task);
    let satisfied = per_task
        .iter()
        .zip(&instance.tasks)
        .filter(|(c, t)| c.deadline_met(t))
        .count();
    let makespan_ms = available.iter().copied().fold(0.0, f64::max);

    Ok(CostReport {
        per_task,
        total_comp,
        total_comm,
        total_viol,
        total: total_comp + total_comm + total_viol,
        pdst_pct: 100.0 * satisfied as f64 / n as f64,
        makespan_ms,
        violated: n - satisfied,
    })
}

/// Reusable buffers for [`schedule_total`].
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    available: Vec<f64>,
    costs: Vec<TaskCost>,
}

fn component_sums(per_task: &[TaskCost]) -> (f64, f64, f64) {
    (
        per_task.iter().map(|c| c.c_comp).sum(),
        per_task.iter().map(|c| c.c_comm).sum(),
        per_task.iter().map(|c| c.c_viol).sum(),
    )
}

/// Total cost of an assignment dispatched in `order`, without constraint checks.
///
/// Uses the same arithmetic as [`evaluate_schedule`], so the result is
/// bit-identical to its `total`.
pub(crate) fn schedule_total(
    instance: &Instance,
    assignment: &[usize],
    order: &[usize],
    policy: ViolationPolicy,
    scratch: &mut Scratch,
) -> f64 {
    scratch.available.clear();
    scratch.available.resize(instance.num_nodes(), 0.0);
    let zero = TaskCost {
        response_ms: 0.0,
        violation_pct: 0.0,
        c_comp: 0.0,
        c_comm: 0.0,
        c_viol: 0.0,
    };
    scratch.costs.clear();
    scratch.costs.resize(assignment.len(), zero);
    for &i in order {
        let j = assignment[i];
        let (task, node) = (&instance.tasks[i], &instance.nodes[j]);
        scratch.costs[i] = TaskCost::compute(task, node, scratch.available[j], policy);
        scratch.available[j] += execution_time(task, node);
    }
    let (comp, comm, viol) = component_sums(&scratch.costs);
    comp + comm + viol
}
