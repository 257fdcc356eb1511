//! `fogsched` command-line driver.
//!
//! Exit codes: 0 success, 1 usage/parse/IO error, 2 infeasible instance,
//! 3 exact enumeration over budget.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fogsched::harness::{emit_timings, workload_hash, ReportMetadata};
use fogsched::schedulers::exact::{check_budget, search_space_label};
use fogsched::workload::derive_seed;
use fogsched::{
    emit_report, generate_nodes, generate_tasks, load_instance, run, run_experiment, save_instance, Config, Instance,
    IoError, ReportFormat, ScheduleError, SchedulerKind, ViolationPolicy,
};
use serde_json::json;

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "fogsched", version, about = "Cost-aware fog/cloud task scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Schedule one instance file and write the allocation.
    Schedule(ScheduleArgs),
    /// Generate a random instance file.
    Generate(GenerateArgs),
    /// Run a parameter sweep and write an aggregate report.
    Experiment(ExperimentArgs),
    /// Compare schedulers against the exhaustive optimum on a small instance.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// TOML config file.
    #[arg(long, env = "FOGSCHED_CONFIG")]
    config: Option<PathBuf>,
    /// Keep negative violation costs instead of clamping them to zero.
    #[arg(long)]
    raw_violation_cost: bool,
    /// Master seed (default: config seed, else 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Override the GA generation count.
    #[arg(long)]
    ga_generations: Option<usize>,
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, short)]
    instance: PathBuf,
    /// One of min-ccv, min-v, rr, random, ga, exact.
    #[arg(long, short, default_value = "min-v")]
    scheduler: String,
    /// Allocation file (JSON).
    #[arg(long, short, default_value = "schedule.json")]
    output: PathBuf,
    /// Enumeration budget for `exact`.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    tasks: usize,
    #[arg(long, default_value_t = 30)]
    fog: usize,
    #[arg(long, default_value_t = 15)]
    cloud: usize,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[command(flatten)]
    common: Common,
    /// Builtin sweep: 1 (tasks), 2 (fog nodes), 3 (cloud nodes).
    #[arg(long)]
    builtin: Option<u32>,
    #[arg(long, default_value = "results")]
    output_dir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated scheduler names.
    #[arg(long, value_delimiter = ',')]
    schedulers: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, short)]
    instance: PathBuf,
    /// Comma-separated scheduler names (default: all heuristics).
    #[arg(long, value_delimiter = ',')]
    schedulers: Option<Vec<String>>,
    /// Maximum number of enumerated assignments.
    #[arg(long)]
    budget: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::usage(e)
    }
}

impl From<ScheduleError> for Failure {
    fn from(e: ScheduleError) -> Self {
        let code = match e {
            ScheduleError::InfeasibleTask { .. } => 2,
            ScheduleError::BudgetExceeded { .. } => 3,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Schedule(a) => schedule(a),
        Command::Generate(a) => generate(a),
        Command::Experiment(a) => experiment(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

impl Common {
    fn load(&self) -> Result<Config, Failure> {
        let mut config = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        if self.raw_violation_cost {
            config.policy.raw_violation_cost = true;
        }
        if let Some(g) = self.ga_generations {
            config.genetic.generations = g;
            config.genetic.validate().map_err(Failure::usage)?;
        }
        Ok(config)
    }

    /// Explicit seed, then the config's, then the announced default.
    fn seed(&self, config: &Config, announce: bool) -> u64 {
        self.seed.or(config.seed).unwrap_or_else(|| {
            if announce {
                println!("seed: {DEFAULT_SEED} (default)");
            }
            DEFAULT_SEED
        })
    }
}

fn parse_schedulers(names: &[String]) -> Result<Vec<SchedulerKind>, Failure> {
    names
        .iter()
        .map(|n| n.trim().parse::<SchedulerKind>().map_err(Failure::usage))
        .collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn schedule(args: ScheduleArgs) -> Result<(), Failure> {
    let kind: SchedulerKind = args.scheduler.parse().map_err(Failure::usage)?;
    let config = args.common.load()?;
    let instance = load_instance(&args.instance)?;
    let mut sc = config.scheduler_config();
    sc.seed = args.common.seed(&config, kind.is_seeded());
    if let Some(b) = args.budget {
        sc.exact_budget = b;
    }
    let outcome = run(kind, &instance, &sc)?;
    let (s, r) = (&outcome.schedule, &outcome.report);

    let task_id = |i: usize| instance.tasks[i].id;
    let per_task: Vec<_> = r
        .per_task
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "task": task_id(i),
                "node": instance.nodes[s.assignment[i]].id,
                "response_ms": c.response_ms,
                "violation_pct": c.violation_pct,
                "c_comp": c.c_comp,
                "c_comm": c.c_comm,
                "c_viol": c.c_viol,
                "deadline_met": c.deadline_met(&instance.tasks[i]),
            })
        })
        .collect();
    let doc = json!({
        "metadata": {
            "tool": "fogsched",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "scheduler": kind.name(),
            "seed": kind.is_seeded().then_some(sc.seed),
            "violation_policy": sc.policy.as_str(),
            "raw_violation_cost": sc.policy == ViolationPolicy::Raw,
            "workload_hash": workload_hash(&instance),
            "genetic": (kind == SchedulerKind::Genetic).then(|| sc.genetic.clone()),
        },
        "assignment": per_task,
        "dispatch_order": s.dispatch_order.iter().map(|&i| task_id(i)).collect::<Vec<_>>(),
        "node_busy_ms": instance.nodes.iter().zip(&s.available_time_ms)
            .map(|(n, t)| json!({"node": n.id, "busy_ms": t})).collect::<Vec<_>>(),
        "totals": {
            "c_comp": r.total_comp,
            "c_comm": r.total_comm,
            "c_viol": r.total_viol,
            "total": r.total,
            "pdst_pct": r.pdst_pct,
            "makespan_ms": r.makespan_ms,
            "violated": r.violated,
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("allocation serializes");
    text.push('\n');
    write_file(&args.output, &text)?;
    println!(
        "{}: {} tasks, {} violated, PDST {:.2}%, total cost {:.4} (violation {:.4}, computation {:.4}, communication {:.4}), makespan {:.1} ms",
        kind,
        instance.num_tasks(),
        r.violated,
        r.pdst_pct,
        r.total,
        r.total_viol,
        r.total_comp,
        r.total_comm,
        r.makespan_ms
    );
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let config = args.common.load()?;
    let seed = args.common.seed(&config, true);
    let tasks = generate_tasks(args.tasks, &config.tasks, derive_seed(seed, 0));
    let nodes = generate_nodes(args.fog, args.cloud, &config.nodes, derive_seed(seed, 1));
    let instance = Instance::new(tasks, nodes).map_err(Failure::usage)?;
    save_instance(&instance, &args.output)?;
    let unplaceable = (0..instance.num_tasks())
        .filter(|&i| instance.feasible_nodes(i).is_empty())
        .count();
    println!(
        "wrote {} tasks, {} fog + {} cloud nodes to {} (hash {})",
        args.tasks,
        args.fog,
        args.cloud,
        args.output.display(),
        workload_hash(&instance)
    );
    if unplaceable > 0 {
        eprintln!("warning: {unplaceable} tasks fit on no node");
    }
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let mut config = args.common.load()?;
    if args.common.config.is_none() && args.builtin.is_none() {
        return Err(Failure::usage(
            "experiment needs --builtin or --config (or FOGSCHED_CONFIG)",
        ));
    }
    if let Some(b) = args.builtin {
        config.experiment.builtin = Some(b);
    }
    if let Some(seed) = args.common.seed {
        config.experiment.seed = Some(seed);
    }
    if let Some(t) = args.trials {
        config.experiment.trials = Some(t);
    }
    if let Some(names) = &args.schedulers {
        config.experiment.schedulers = Some(parse_schedulers(names)?);
    }
    let spec = config.experiment_spec(None).map_err(Failure::usage)?;
    let result = run_experiment(&spec, args.jobs).map_err(Failure::usage)?;

    fs::create_dir_all(&args.output_dir).map_err(|e| Failure::usage(format!("{}: {e}", args.output_dir.display())))?;
    let format = ReportFormat::from(args.format);
    let report_path = args.output_dir.join(format!("report.{}", format.extension()));
    emit_report(
        &result.rows,
        &ReportMetadata::from_result(&result),
        format,
        &report_path,
    )?;
    emit_timings(&result.rows, args.output_dir.join("timings.csv"))?;

    let mut table = format!(
        "{} ({} trials, seed {})\n{:>6}  {:<8} {:>8} {:>12} {:>12}\n",
        spec.name, spec.trials, spec.seed, spec.sweep, "sched", "PDST%", "c_viol", "total"
    );
    for r in &result.rows {
        let _ = writeln!(
            table,
            "{:>6}  {:<8} {:>8.2} {:>12.3} {:>12.3}{}",
            r.sweep_value,
            r.scheduler.name(),
            r.pdst.avg,
            r.c_viol.avg,
            r.total.avg,
            if r.failed_trials > 0 {
                format!("  ({} failed)", r.failed_trials)
            } else {
                String::new()
            }
        );
    }
    print!("{table}");
    println!("wrote {}", report_path.display());
    let failed: usize = result.rows.iter().map(|r| r.failed_trials).sum();
    if failed > 0 {
        eprintln!("warning: {failed} scheduler runs failed; see failed_trials in the report");
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let config = args.common.load()?;
    let instance = load_instance(&args.instance)?;
    let mut sc = config.scheduler_config();
    sc.seed = args.common.seed(&config, false);
    if let Some(b) = args.budget {
        sc.exact_budget = b;
    }
    let kinds = match &args.schedulers {
        Some(names) => parse_schedulers(names)?,
        None => SchedulerKind::HEURISTICS.to_vec(),
    };
    if check_budget(&instance, sc.exact_budget).is_err() {
        let label = search_space_label(instance.num_nodes(), instance.num_tasks());
        return Err(Failure {
            code: 3,
            message: format!(
                "m^n = {}^{} = {label} assignments exceeds the enumeration budget of {} (raise it with --budget)",
                instance.num_nodes(),
                instance.num_tasks(),
                sc.exact_budget
            ),
        });
    }
    let optimum = run(SchedulerKind::Exact, &instance, &sc)?.report.total;
    println!("{:<8} {:>14} {:>10}", "sched", "total", "gap");
    println!("{:<8} {:>14.6} {:>10.6}", "exact", optimum, 0.0);
    for kind in kinds.into_iter().filter(|&k| k != SchedulerKind::Exact) {
        let total = run(kind, &instance, &sc)?.report.total;
        let gap = if total == optimum {
            0.0
        } else {
            (total - optimum) / optimum
        };
        println!("{:<8} {:>14.6} {:>10.6}", kind.name(), total, gap);
    }
    Ok(())
}
