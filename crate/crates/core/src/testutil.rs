//! Fixtures shared by unit tests.

use crate::model::{Node, NodeKind, Task};

pub fn task(id: u32, size_mi: f64, mem_mb: f64, deadline_ms: f64) -> Task {
    Task {
        id,
        size_mi,
        mem_mb,
        input_mb: 0.5,
        output_mb: 0.5,
        deadline_ms,
        qos_pct: 95.0,
        penalty_per_pct: 0.2,
    }
}

pub fn node(id: u32, cpu_mips: f64, mem_mb: f64) -> Node {
    Node {
        id,
        kind: NodeKind::Fog,
        cpu_mips,
        cost_cpu: 0.3,
        cost_mem: 0.02,
        cost_bw: 0.01,
        mem_mb,
        delay_ms: 1.0,
    }
}
