//! JSON instance files.
//!
//! ```json
//! { "schema_version": 1, "tasks": [ { "id": 1, "size_mi": 2000.0, ... } ], "nodes": [ ... ] }
//! ```
//!
//! Field names match [`Task`](crate::model::Task) and [`Node`](crate::model::Node).
//! Unknown fields are rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::model::{Instance, Node, Task};

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

/// The ten-task, three-node worked example (two fog nodes, one cloud node).
pub const TOY_INSTANCE_JSON: &str = include_str!("../../data/toy.json");

#[derive(Serialize)]
struct InstanceFileRef<'a> {
    schema_version: u32,
    tasks: &'a [Task],
    nodes: &'a [Node],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    schema_version: u32,
    tasks: Vec<Task>,
    nodes: Vec<Node>,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<u32>,
}

pub fn to_json(instance: &Instance) -> String {
    let file = InstanceFileRef {
        schema_version: INSTANCE_SCHEMA_VERSION,
        tasks: &instance.tasks,
        nodes: &instance.nodes,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("instances always serialize");
    s.push('\n');
    s
}

/// Parses and validates instance JSON; `path` is only used in diagnostics.
pub fn parse_instance(text: &str, path: &Path) -> Result<Instance, IoError> {
    // Check the version first so a future schema reports a version error
    // rather than a confusing field error.
    if let Ok(VersionProbe {
        schema_version: Some(found),
    }) = serde_json::from_str::<VersionProbe>(text)
    {
        if found != INSTANCE_SCHEMA_VERSION {
            return Err(IoError::SchemaVersion {
                path: path.to_path_buf(),
                found,
                expected: INSTANCE_SCHEMA_VERSION,
            });
        }
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        IoError::Parse {
            path: path.to_path_buf(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })?;
    debug_assert_eq!(file.schema_version, INSTANCE_SCHEMA_VERSION);
    Instance::new(file.tasks, file.nodes).map_err(|source| IoError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text, path)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, to_json(instance)).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn toy_instance() -> Instance {
    parse_instance(TOY_INSTANCE_JSON, Path::new("toy.json")).expect("bundled toy instance is valid")
}
