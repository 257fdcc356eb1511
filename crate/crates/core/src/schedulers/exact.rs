//! Exhaustive search over all memory-feasible assignments.
//!
//! Each assignment is priced under both dispatch orders used by the other
//! schedulers: input order and ascending deadline order. The search space
//! is therefore a superset of every heuristic's output, which makes the
//! result a lower bound on their totals.

use crate::cost::ViolationPolicy;
use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::{schedule_total, Schedule, Scratch};
use crate::schedulers::{deadline_order, feasibility};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Size of the unconstrained search space `m^n`, or `None` if it overflows `u128`.
pub fn search_space(num_nodes: usize, num_tasks: usize) -> Option<u128> {
    let exp = u32::try_from(num_tasks).ok()?;
    (num_nodes as u128).checked_pow(exp)
}

/// Human-readable `m^n`, exact when it fits in `u128`.
pub fn search_space_label(num_nodes: usize, num_tasks: usize) -> String {
    match search_space(num_nodes, num_tasks) {
        Some(v) => v.to_string(),
        None => format!("{num_nodes}^{num_tasks}"),
    }
}

pub fn check_budget(instance: &Instance, budget: u64) -> Result<(), ScheduleError> {
    let (m, n) = (instance.num_nodes(), instance.num_tasks());
    match search_space(m, n) {
        Some(states) if states <= budget as u128 => Ok(()),
        _ => Err(ScheduleError::BudgetExceeded {
            states: search_space_label(m, n),
            budget,
        }),
    }
}

/// Minimum-total-cost schedule.
///
/// Ties go to the lexicographically smallest assignment vector, and to
/// input order before deadline order.
pub fn exact(instance: &Instance, policy: ViolationPolicy, budget: u64) -> Result<Schedule, ScheduleError> {
    check_budget(instance, budget)?;
    let feasible = feasibility(instance)?;
    let n = instance.num_tasks();
    let orders = [(0..n).collect::<Vec<_>>(), deadline_order(instance)];
    let single_order = orders[0] == orders[1];

    // Odometer over positions into each task's feasible list. Feasible lists
    // are ascending, so the odometer visits assignments lexicographically.
    let mut digits = vec![0usize; n];
    let mut assignment: Vec<usize> = feasible.iter().map(|f| f[0]).collect();
    let mut scratch = Scratch::default();
    let mut best: Option<(f64, Vec<usize>, usize)> = None;

    loop {
        for (k, order) in orders.iter().enumerate() {
            if k == 1 && single_order {
                break;
            }
            let total = schedule_total(instance, &assignment, order, policy, &mut scratch);
            if best.as_ref().is_none_or(|(b, _, _)| total < *b) {
                best = Some((total, assignment.clone(), k));
            }
        }

        let mut pos = n;
        loop {
            if pos == 0 {
                let (_, assignment, k) = best.expect("at least one assignment");
                let order = orders[k].clone();
                return Ok(Schedule::from_assignment(instance, assignment, order));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < feasible[pos].len() {
                assignment[pos] = feasible[pos][digits[pos]];
                break;
            }
            digits[pos] = 0;
            assignment[pos] = feasible[pos][0];
        }
    }
}
