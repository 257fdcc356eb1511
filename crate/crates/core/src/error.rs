use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while validating instances or evaluating schedules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("task {task}: {reason}")]
    InvalidTask { task: u32, reason: String },
    #[error("node {node}: {reason}")]
    InvalidNode { node: u32, reason: String },
    #[error("instance has no tasks")]
    NoTasks,
    #[error("instance has no nodes")]
    NoNodes,
    #[error("duplicate task id {0}")]
    DuplicateTaskId(u32),
    #[error("duplicate node id {0}")]
    DuplicateNodeId(u32),
    #[error("memory constraint violated: task {task} needs {task_mem} MB but node {node} has {node_mem} MB")]
    MemoryConstraint {
        task: u32,
        node: u32,
        task_mem: f64,
        node_mem: f64,
    },
    #[error("task constraint violated: {0}")]
    TaskConstraint(String),
}

/// Errors raised by the schedulers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("task {task} fits on no node (needs {mem_mb} MB)")]
    InfeasibleTask { task: u32, mem_mb: f64 },
    #[error("search space of {states} states exceeds the enumeration budget of {budget}")]
    BudgetExceeded { states: String, budget: u64 },
    #[error("unknown scheduler '{name}' (valid: {valid})")]
    UnknownScheduler { name: String, valid: String },
    #[error("invalid genetic parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors raised while reading or writing instance, config and report files.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}, column {column}, field `{field}`: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("{path}: unsupported schema version {found} (expected {expected})")]
    SchemaVersion { path: PathBuf, found: u32, expected: u32 },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: ModelError,
    },
    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Report { path: PathBuf, message: String },
}
