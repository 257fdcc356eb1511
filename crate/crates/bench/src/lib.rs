//! Workloads shared by the benchmarks in `benches/`.

use fogsched::workload::{NodeDistribution, TaskDistribution};
use fogsched::{generate_nodes, generate_tasks, Instance};

/// `n` default-distribution tasks on `fog` fog and `cloud` cloud nodes.
pub fn workload(n: usize, fog: usize, cloud: usize, seed: u64) -> Instance {
    Instance::new(
        generate_tasks(n, &TaskDistribution::default(), seed),
        generate_nodes(fog, cloud, &NodeDistribution::default(), seed ^ 1),
    )
    .expect("generated instance is valid")
}
