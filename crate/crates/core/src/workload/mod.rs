//! Seeded workload generation and instance files.
//!
//! All randomness comes from ChaCha8 streams seeded through
//! `SeedableRng::seed_from_u64`, so a `(parameters, seed)` pair yields the
//! same population on every platform. Each attribute is drawn as
//! `low + (high - low) * u` with `u` a 53-bit uniform in `[0, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Node, NodeKind, Task};

mod dist;
mod io;

pub use dist::{NodeDistribution, NodeRanges, Range, TaskDistribution, TaskTypeRanges};
pub use io::{
    load_instance, parse_instance, save_instance, to_json, toy_instance, INSTANCE_SCHEMA_VERSION, TOY_INSTANCE_JSON,
};

/// Name of the pseudo-random generator, recorded in every report.
pub const GENERATOR_NAME: &str = "chacha8";

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed: `splitmix64(splitmix64(seed) ^ stream)`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ stream)
}

/// Draws `n` tasks with ids `0..n`.
///
/// Per task, in this order: the type index by `type_weights`, then size,
/// memory, input, output, deadline, QoS and penalty.
pub fn generate_tasks(n: usize, dist: &TaskDistribution, seed: u64) -> Vec<Task> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let ty = &dist.types[pick_weighted(&dist.type_weights, rng.random::<f64>())];
            let mut draw = |r: &Range| r.at(rng.random::<f64>());
            let size_mi = draw(&ty.size_mi);
            let mem_mb = draw(&dist.mem_mb);
            let input_mb = draw(&dist.input_mb);
            let output_mb = draw(&dist.output_mb);
            let deadline_ms = draw(&ty.deadline_ms);
            let qos_pct = draw(&dist.qos_pct);
            let penalty_per_pct = draw(&dist.penalty_per_pct);
            Task {
                id: i as u32,
                size_mi,
                mem_mb,
                input_mb,
                output_mb,
                deadline_ms,
                qos_pct,
                penalty_per_pct,
            }
        })
        .collect()
}

/// Draws `fog` fog nodes followed by `cloud` cloud nodes, ids `0..fog + cloud`.
pub fn generate_nodes(fog: usize, cloud: usize, dist: &NodeDistribution, seed: u64) -> Vec<Node> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..fog + cloud)
        .map(|j| {
            let (kind, r) = if j < fog {
                (NodeKind::Fog, &dist.fog)
            } else {
                (NodeKind::Cloud, &dist.cloud)
            };
            let mut draw = |r: &Range| r.at(rng.random::<f64>());
            Node {
                id: j as u32,
                kind,
                cpu_mips: draw(&r.cpu_mips),
                cost_cpu: draw(&r.cost_cpu),
                cost_mem: draw(&r.cost_mem),
                cost_bw: draw(&r.cost_bw),
                mem_mb: draw(&r.mem_mb),
                delay_ms: draw(&r.delay_ms),
            }
        })
        .collect()
}

fn pick_weighted(weights: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (k, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return k;
        }
    }
    // Rounding can leave the cumulative sum just below 1.
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(weights.len() - 1)
}
