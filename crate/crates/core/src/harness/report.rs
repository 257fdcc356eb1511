//! CSV and JSON report files.
//!
//! Both formats carry the same columns, in this order:
//!
//! `sweep_value, scheduler, trials, failed_trials,` then `avg/min/max` of
//! `pdst, makespan_ms, c_viol, c_comp, c_comm, total`, then
//! `workload_hash, cloud_only_tasks`.
//!
//! CSV files start with `# key: value` metadata lines (values JSON-encoded);
//! JSON files hold `{"metadata": {...}, "rows": [...]}`. Wall-clock timings
//! are kept out of these files so reruns are byte-identical; see
//! [`emit_timings`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::harness::run::{AggregateRow, ExperimentResult};
use crate::schedulers::GeneticParams;
use crate::workload::GENERATOR_NAME;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub tool: String,
    pub tool_version: String,
    pub experiment: String,
    pub sweep_variable: String,
    pub sweep_values: Vec<usize>,
    pub fixed_tasks: usize,
    pub fixed_fog: usize,
    pub fixed_cloud: usize,
    pub trials: usize,
    pub seed: u64,
    pub generator: String,
    pub violation_policy: String,
    pub raw_violation_cost: bool,
    pub schedulers: Vec<String>,
    pub genetic: GeneticParams,
    pub task_type_weights: Vec<f64>,
    pub exact_budget: u64,
}

impl ReportMetadata {
    pub fn from_result(result: &ExperimentResult) -> Self {
        let spec = &result.spec;
        Self {
            tool: "fogsched".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            experiment: spec.name.clone(),
            sweep_variable: spec.sweep.to_string(),
            sweep_values: spec.values.clone(),
            fixed_tasks: spec.tasks,
            fixed_fog: spec.fog,
            fixed_cloud: spec.cloud,
            trials: spec.trials,
            seed: spec.seed,
            generator: GENERATOR_NAME.into(),
            violation_policy: spec.policy.as_str().into(),
            raw_violation_cost: spec.policy == crate::cost::ViolationPolicy::Raw,
            schedulers: spec.schedulers.iter().map(|k| k.name().to_string()).collect(),
            genetic: spec.genetic.clone(),
            task_type_weights: spec.task_dist.type_weights.clone(),
            exact_budget: spec.exact_budget,
        }
    }
}

#[derive(Debug, Serialize)]
struct FlatRow<'a> {
    sweep_value: usize,
    scheduler: &'a str,
    trials: usize,
    failed_trials: usize,
    pdst_avg: f64,
    pdst_min: f64,
    pdst_max: f64,
    makespan_ms_avg: f64,
    makespan_ms_min: f64,
    makespan_ms_max: f64,
    c_viol_avg: f64,
    c_viol_min: f64,
    c_viol_max: f64,
    c_comp_avg: f64,
    c_comp_min: f64,
    c_comp_max: f64,
    c_comm_avg: f64,
    c_comm_min: f64,
    c_comm_max: f64,
    total_avg: f64,
    total_min: f64,
    total_max: f64,
    workload_hash: &'a str,
    cloud_only_tasks: usize,
}

impl<'a> From<&'a AggregateRow> for FlatRow<'a> {
    fn from(r: &'a AggregateRow) -> Self {
        Self {
            sweep_value: r.sweep_value,
            scheduler: r.scheduler.name(),
            trials: r.trials,
            failed_trials: r.failed_trials,
            pdst_avg: r.pdst.avg,
            pdst_min: r.pdst.min,
            pdst_max: r.pdst.max,
            makespan_ms_avg: r.makespan_ms.avg,
            makespan_ms_min: r.makespan_ms.min,
            makespan_ms_max: r.makespan_ms.max,
            c_viol_avg: r.c_viol.avg,
            c_viol_min: r.c_viol.min,
            c_viol_max: r.c_viol.max,
            c_comp_avg: r.c_comp.avg,
            c_comp_min: r.c_comp.min,
            c_comp_max: r.c_comp.max,
            c_comm_avg: r.c_comm.avg,
            c_comm_min: r.c_comm.min,
            c_comm_max: r.c_comm.max,
            total_avg: r.total.avg,
            total_min: r.total.min,
            total_max: r.total.max,
            workload_hash: &r.workload_hash,
            cloud_only_tasks: r.cloud_only_tasks,
        }
    }
}

fn metadata_lines(metadata: &ReportMetadata) -> String {
    let value = serde_json::to_value(metadata).expect("metadata serializes");
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (key, v) in map {
            out.push_str(&format!("# {key}: {v}\n"));
        }
    }
    out
}

pub fn render_csv(rows: &[AggregateRow], metadata: &ReportMetadata) -> String {
    let mut out = metadata_lines(metadata).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for r in rows {
            w.serialize(FlatRow::from(r)).expect("in-memory csv write");
        }
        w.flush().expect("in-memory csv flush");
    }
    String::from_utf8(out).expect("csv output is utf-8")
}

pub fn render_json(rows: &[AggregateRow], metadata: &ReportMetadata) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        metadata: &'a ReportMetadata,
        rows: Vec<FlatRow<'a>>,
    }
    let doc = Doc {
        metadata,
        rows: rows.iter().map(FlatRow::from).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Writes the aggregate table in `format` to `path`.
pub fn emit_report(
    rows: &[AggregateRow],
    metadata: &ReportMetadata,
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<(), IoError> {
    let path = path.as_ref();
    if rows.is_empty() {
        return Err(IoError::Report {
            path: path.to_path_buf(),
            message: "no rows to write".into(),
        });
    }
    let text = match format {
        ReportFormat::Csv => render_csv(rows, metadata),
        ReportFormat::Json => render_json(rows, metadata),
    };
    fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `sweep_value, scheduler, mean_wall_ms` as CSV. Not reproducible across runs.
pub fn emit_timings(rows: &[AggregateRow], path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let mut out = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["sweep_value", "scheduler", "mean_wall_ms"])
            .expect("in-memory csv write");
        for r in rows {
            w.write_record([
                r.sweep_value.to_string(),
                r.scheduler.name().to_string(),
                format!("{:.3}", r.mean_wall_ms),
            ])
            .expect("in-memory csv write");
        }
        w.flush().expect("in-memory csv flush");
    }
    fs::write(path, out).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{builtin_experiment, run_experiment};
    use crate::schedulers::SchedulerKind;

    fn result() -> ExperimentResult {
        let mut spec = builtin_experiment(2).unwrap();
        spec.values = vec![3];
        spec.tasks = 12;
        spec.cloud = 1;
        spec.trials = 2;
        spec.schedulers = vec![SchedulerKind::MinV, SchedulerKind::RoundRobin];
        run_experiment(&spec, Some(1)).unwrap()
    }

    fn data_lines(csv: &str) -> Vec<&str> {
        csv.lines().filter(|l| !l.starts_with('#')).collect()
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let r = result();
        let meta = ReportMetadata::from_result(&r);
        let csv = render_csv(&r.rows, &meta);
        let lines = data_lines(&csv);
        assert_eq!(lines.len(), 3);
        assert!(lines[0]
            .starts_with("sweep_value,scheduler,trials,failed_trials,pdst_avg,pdst_min,pdst_max,makespan_ms_avg"));
        assert!(lines[0].ends_with("total_avg,total_min,total_max,workload_hash,cloud_only_tasks"));
        assert!(csv.contains("# generator: \"chacha8\"\n"));
        assert!(csv.contains("# violation_policy: \"clamped\"\n"));
        assert!(csv.contains("# raw_violation_cost: false\n"));
    }

    #[test]
    fn csv_and_json_agree() {
        let r = result();
        let meta = ReportMetadata::from_result(&r);
        let csv = render_csv(&r.rows, &meta);
        let json: serde_json::Value = serde_json::from_str(&render_json(&r.rows, &meta)).unwrap();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(csv.as_bytes());
        let headers = reader.headers().unwrap().clone();
        let json_rows = json["rows"].as_array().unwrap();
        let mut n = 0;
        for (record, jrow) in reader.records().zip(json_rows) {
            let record = record.unwrap();
            for (h, field) in headers.iter().zip(record.iter()) {
                let jv = &jrow[h];
                match jv {
                    serde_json::Value::Number(num) => {
                        assert_eq!(field.parse::<f64>().unwrap(), num.as_f64().unwrap(), "{h}")
                    }
                    serde_json::Value::String(s) => assert_eq!(field, s),
                    other => panic!("unexpected {other}"),
                }
            }
            n += 1;
        }
        assert_eq!(n, r.rows.len());
        assert_eq!(json["metadata"]["seed"], 1);
    }

    #[test]
    fn empty_rows_refused() {
        let r = result();
        let meta = ReportMetadata::from_result(&r);
        let dir = tempfile::tempdir().unwrap();
        assert!(emit_report(&[], &meta, ReportFormat::Csv, dir.path().join("x.csv")).is_err());
        let missing = dir.path().join("no/such/dir/x.csv");
        match emit_report(&r.rows, &meta, ReportFormat::Csv, &missing) {
            Err(IoError::Io { path, .. }) => assert_eq!(path, missing),
            other => panic!("unexpected {other:?}"),
        }
    }
}
