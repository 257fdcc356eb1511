//! Attribute ranges for generated tasks and nodes.

use serde::{Deserialize, Serialize};

/// Closed interval `[low, high]`, written as a two-element array in files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Range {
    pub low: f64,
    pub high: f64,
}

impl Range {
    pub const fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    pub fn contains(&self, value: f64) -> bool {
        self.low <= value && value <= self.high
    }

    /// Maps a unit draw `u` in `[0, 1)` into the range.
    pub fn at(&self, u: f64) -> f64 {
        (self.low + (self.high - self.low) * u).min(self.high)
    }
}

impl TryFrom<[f64; 2]> for Range {
    type Error = String;

    fn try_from([low, high]: [f64; 2]) -> Result<Self, Self::Error> {
        if !low.is_finite() || !high.is_finite() {
            return Err(format!("range bounds must be finite, got [{low}, {high}]"));
        }
        if low > high {
            return Err(format!("range is empty: low {low} > high {high}"));
        }
        Ok(Self { low, high })
    }
}

impl From<Range> for [f64; 2] {
    fn from(r: Range) -> Self {
        [r.low, r.high]
    }
}

/// Size and deadline ranges of one task type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskTypeRanges {
    pub size_mi: Range,
    pub deadline_ms: Range,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaskDistribution {
    /// Types 1, 2 and 3 by default: short, medium and long tasks.
    pub types: Vec<TaskTypeRanges>,
    /// Probability of drawing each type; must sum to 1.
    pub type_weights: Vec<f64>,
    pub mem_mb: Range,
    pub input_mb: Range,
    pub output_mb: Range,
    pub qos_pct: Range,
    pub penalty_per_pct: Range,
}

impl Default for TaskDistribution {
    fn default() -> Self {
        Self {
            types: vec![
                TaskTypeRanges {
                    size_mi: Range::new(100.0, 372.0),
                    deadline_ms: Range::new(100.0, 500.0),
                },
                TaskTypeRanges {
                    size_mi: Range::new(1028.0, 4280.0),
                    deadline_ms: Range::new(500.0, 2500.0),
                },
                TaskTypeRanges {
                    size_mi: Range::new(5123.0, 9784.0),
                    deadline_ms: Range::new(2500.0, 10000.0),
                },
            ],
            type_weights: vec![1.0 / 3.0; 3],
            mem_mb: Range::new(50.0, 200.0),
            input_mb: Range::new(0.3, 1.5),
            output_mb: Range::new(0.1, 1.0),
            qos_pct: Range::new(90.0, 99.99),
            penalty_per_pct: Range::new(0.1, 0.5),
        }
    }
}

impl TaskDistribution {
    pub fn validate(&self) -> Result<(), String> {
        if self.types.is_empty() {
            return Err("at least one task type is required".into());
        }
        if self.types.len() != self.type_weights.len() {
            return Err(format!(
                "{} task types but {} type weights",
                self.types.len(),
                self.type_weights.len()
            ));
        }
        if self.type_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err("type weights must be finite and >= 0".into());
        }
        let sum: f64 = self.type_weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(format!("type weights sum to {sum}, expected 1"));
        }
        for t in &self.types {
            if t.size_mi.low <= 0.0 || t.deadline_ms.low <= 0.0 {
                return Err("task size and deadline ranges must be positive".into());
            }
        }
        if self.mem_mb.low <= 0.0 {
            return Err("task memory range must be positive".into());
        }
        if self.input_mb.low < 0.0 || self.output_mb.low < 0.0 || self.penalty_per_pct.low < 0.0 {
            return Err("file size and penalty ranges must be non-negative".into());
        }
        if self.qos_pct.low <= 0.0 || self.qos_pct.high > 100.0 {
            return Err("QoS range must lie within (0, 100]".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRanges {
    pub cpu_mips: Range,
    pub cost_cpu: Range,
    pub cost_mem: Range,
    pub cost_bw: Range,
    pub mem_mb: Range,
    pub delay_ms: Range,
}

impl NodeRanges {
    fn validate(&self, kind: &str) -> Result<(), String> {
        if self.cpu_mips.low <= 0.0 || self.mem_mb.low <= 0.0 {
            return Err(format!("{kind}: cpu and memory ranges must be positive"));
        }
        if self.cost_cpu.low < 0.0 || self.cost_mem.low < 0.0 || self.cost_bw.low < 0.0 || self.delay_ms.low < 0.0 {
            return Err(format!("{kind}: cost and delay ranges must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NodeDistribution {
    pub fog: NodeRanges,
    pub cloud: NodeRanges,
}

impl Default for NodeDistribution {
    fn default() -> Self {
        Self {
            fog: NodeRanges {
                cpu_mips: Range::new(500.0, 2000.0),
                cost_cpu: Range::new(0.2, 0.5),
                cost_mem: Range::new(0.01, 0.03),
                cost_bw: Range::new(0.01, 0.02),
                mem_mb: Range::new(150.0, 250.0),
                delay_ms: Range::new(1.0, 5.0),
            },
            cloud: NodeRanges {
                cpu_mips: Range::new(3000.0, 10000.0),
                cost_cpu: Range::new(1.0, 2.1),
                cost_mem: Range::new(0.02, 0.05),
                cost_bw: Range::new(0.05, 0.1),
                mem_mb: Range::new(256.0, 4096.0),
                delay_ms: Range::new(50.0, 250.0),
            },
        }
    }
}

impl NodeDistribution {
    pub fn validate(&self) -> Result<(), String> {
        self.fog.validate("fog")?;
        self.cloud.validate("cloud")
    }
}
