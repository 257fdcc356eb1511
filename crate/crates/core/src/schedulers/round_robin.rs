//! Round-robin baseline.

use crate::cost::execution_time;
use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::Schedule;
use crate::schedulers::{infeasible, Dispatcher};

/// Cycles through the nodes, giving each task to the next node that has
/// enough memory and executes it within its deadline.
///
/// If no node in a full cycle is fast enough, the first memory-feasible
/// node from the cursor is used instead. The cursor then moves past the
/// chosen node.
pub fn round_robin(instance: &Instance) -> Result<Schedule, ScheduleError> {
    let m = instance.num_nodes();
    let mut dispatch = Dispatcher::new(instance);
    let mut cursor = 0;
    for (i, task) in instance.tasks.iter().enumerate() {
        let cycle = || (0..m).map(|k| (cursor + k) % m);
        let chosen = cycle()
            .find(|&j| {
                let node = &instance.nodes[j];
                node.fits(task) && execution_time(task, node) < task.deadline_ms
            })
            .or_else(|| cycle().find(|&j| instance.nodes[j].fits(task)))
            .ok_or_else(|| infeasible(instance, i))?;
        dispatch.place(i, chosen);
        cursor = (chosen + 1) % m;
    }
    Ok(dispatch.finish())
}
