//! Greedy cheapest-node placement in input order.

use crate::cost::{TaskCost, ViolationPolicy};
use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::Schedule;
use crate::schedulers::{infeasible, Best, Dispatcher};

/// Places each task, in input order, on the memory-feasible node with the
/// lowest computation + communication + violation cost given the node's
/// current queue.
pub fn min_ccv(instance: &Instance, policy: ViolationPolicy) -> Result<Schedule, ScheduleError> {
    let mut dispatch = Dispatcher::new(instance);
    for (i, task) in instance.tasks.iter().enumerate() {
        let mut best = Best::new();
        for (j, node) in instance.nodes.iter().enumerate() {
            if !node.fits(task) {
                continue;
            }
            let cost = TaskCost::compute(task, node, dispatch.available(j), policy);
            best.offer(cost.total(), j, node);
        }
        let j = best.get().ok_or_else(|| infeasible(instance, i))?;
        dispatch.place(i, j);
    }
    Ok(dispatch.finish())
}
