//! Uniform random baseline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::Schedule;
use crate::schedulers::{feasibility, Dispatcher};

/// Places each task on a memory-feasible node drawn uniformly with a
/// ChaCha8 generator seeded from `seed`.
pub fn random_scheduler(instance: &Instance, seed: u64) -> Result<Schedule, ScheduleError> {
    let feasible = feasibility(instance)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dispatch = Dispatcher::new(instance);
    for (i, nodes) in feasible.iter().enumerate() {
        dispatch.place(i, nodes[rng.random_range(0..nodes.len())]);
    }
    Ok(dispatch.finish())
}
