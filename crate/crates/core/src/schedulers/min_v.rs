//! Deadline-first placement that prefers deadline-meeting nodes.

use crate::cost::{
    communication_cost, computation_cost, response_time, violation_cost, violation_pct, ViolationPolicy,
};
use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::Schedule;
use crate::schedulers::{deadline_order, infeasible, Best, Dispatcher};

/// Places tasks in ascending deadline order (ties by task id).
///
/// For each task the memory-feasible nodes are split by whether the task
/// would meet its deadline there. If any node does, the cheapest of those by
/// computation + communication cost wins; otherwise the node with the lowest
/// violation cost.
pub fn min_v(instance: &Instance, policy: ViolationPolicy) -> Result<Schedule, ScheduleError> {
    let mut dispatch = Dispatcher::new(instance);
    let mut satisfied = Vec::with_capacity(instance.num_nodes());
    let mut unsatisfied = Vec::with_capacity(instance.num_nodes());
    for i in deadline_order(instance) {
        let task = &instance.tasks[i];
        satisfied.clear();
        unsatisfied.clear();
        for (j, node) in instance.nodes.iter().enumerate() {
            if !node.fits(task) {
                continue;
            }
            let response = response_time(task, node, dispatch.available(j));
            if response <= task.deadline_ms {
                satisfied.push(j);
            } else {
                unsatisfied.push((j, response));
            }
        }
        let j = if !satisfied.is_empty() {
            min_comp_comm(instance, i, &satisfied)
        } else if !unsatisfied.is_empty() {
            min_viol(instance, i, &unsatisfied, policy)
        } else {
            return Err(infeasible(instance, i));
        };
        dispatch.place(i, j);
    }
    Ok(dispatch.finish())
}

fn min_comp_comm(instance: &Instance, task_idx: usize, candidates: &[usize]) -> usize {
    let task = &instance.tasks[task_idx];
    let mut best = Best::new();
    for &j in candidates {
        let node = &instance.nodes[j];
        best.offer(computation_cost(task, node) + communication_cost(task, node), j, node);
    }
    best.get().expect("candidates are nonempty")
}

fn min_viol(instance: &Instance, task_idx: usize, candidates: &[(usize, f64)], policy: ViolationPolicy) -> usize {
    let task = &instance.tasks[task_idx];
    let mut best = Best::new();
    for &(j, response) in candidates {
        let v = violation_pct(response, task.deadline_ms);
        best.offer(
            violation_cost(v, task.qos_pct, task.penalty_per_pct, policy),
            j,
            &instance.nodes[j],
        );
    }
    best.get().expect("candidates are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Node;
    use crate::testutil::{node, task};

    #[test]
    fn single_node_always_used() {
        for deadline in [1.0, 1e6] {
            let inst = Instance::new(vec![task(0, 1000.0, 10.0, deadline)], vec![node(0, 100.0, 200.0)]).unwrap();
            assert_eq!(min_v(&inst, ViolationPolicy::Clamped).unwrap().assignment, vec![0]);
        }
    }

    #[test]
    fn dispatches_in_deadline_order() {
        let tasks = vec![
            task(0, 100.0, 10.0, 900.0),
            task(1, 100.0, 10.0, 300.0),
            task(2, 100.0, 10.0, 900.0),
            task(3, 100.0, 10.0, 100.0),
        ];
        let inst = Instance::new(tasks, vec![node(0, 1000.0, 200.0)]).unwrap();
        assert_eq!(
            min_v(&inst, ViolationPolicy::Clamped).unwrap().dispatch_order,
            vec![3, 1, 0, 2]
        );
    }

    #[test]
    fn dominant_node_until_queue_misses_deadline() {
        // Node 0 is cheaper on every unit cost and fast enough for one task
        // at a time; the third task would finish at 2 + 1500 ms > 1400 ms.
        let mut cheap = node(0, 2000.0, 200.0);
        cheap.cost_cpu = 0.1;
        cheap.cost_mem = 0.01;
        cheap.cost_bw = 0.005;
        let pricey: Node = node(1, 2000.0, 200.0);
        let tasks = vec![
            task(0, 1000.0, 10.0, 1400.0),
            task(1, 1000.0, 10.0, 1400.0),
            task(2, 1000.0, 10.0, 1400.0),
        ];
        let inst = Instance::new(tasks, vec![cheap, pricey]).unwrap();
        let s = min_v(&inst, ViolationPolicy::Clamped).unwrap();
        assert_eq!(s.assignment, vec![0, 0, 1]);
    }

    #[test]
    fn falls_back_to_lowest_violation_cost() {
        // No node meets 10 ms; node 1 is faster and so violates less.
        let inst = Instance::new(
            vec![task(0, 1000.0, 10.0, 10.0)],
            vec![node(0, 500.0, 200.0), node(1, 4000.0, 200.0)],
        )
        .unwrap();
        assert_eq!(min_v(&inst, ViolationPolicy::Clamped).unwrap().assignment, vec![1]);
    }
}
