//! Acceptance checks. Prints one `PASS`/`FAIL` line per criterion (with
//! indented detail lines) and exits non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fogsched::harness::{render_csv, ExperimentResult, ReportMetadata};
use fogsched::workload::{derive_seed, parse_instance, splitmix64, to_json, NodeDistribution, TaskDistribution};
use fogsched::{
    builtin_experiment, communication_cost, computation_cost, evaluate_schedule, execution_time, generate_nodes,
    generate_tasks, min_ccv, min_v, random_scheduler, response_time, run, run_experiment, toy_instance, violation_cost,
    violation_pct, Instance, SchedulerConfig, SchedulerKind, ViolationPolicy,
};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(summary: impl Into<String>) -> Self {
        Self {
            ok: true,
            summary: summary.into(),
            details: Vec::new(),
        }
    }

    /// Records one sub-check; any failing sub-check fails the criterion.
    fn check(&mut self, ok: bool, detail: String) {
        self.ok &= ok;
        self.details
            .push(format!("{} {detail}", if ok { "ok  " } else { "MISS" }));
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn toy_direction() -> Verdict {
    let mut v = Verdict::new("toy instance: Min-CCV 5 late, Min-V 3 late, Min-V cheaper on violations");
    let start = Instant::now();
    let inst = toy_instance();
    let policy = ViolationPolicy::Clamped;
    let ccv = evaluate_schedule(&inst, &min_ccv(&inst, policy).unwrap(), policy).unwrap();
    let mv = evaluate_schedule(&inst, &min_v(&inst, policy).unwrap(), policy).unwrap();
    let elapsed = start.elapsed();
    v.check(
        ccv.violated == 5,
        format!("Min-CCV violated tasks = {} (want 5)", ccv.violated),
    );
    v.check(
        mv.violated == 3,
        format!("Min-V violated tasks = {} (want 3)", mv.violated),
    );
    v.check(
        mv.total_viol < ccv.total_viol,
        format!(
            "violation cost Min-V {:.4} < Min-CCV {:.4}",
            mv.total_viol, ccv.total_viol
        ),
    );
    let e = rel_err(ccv.total_viol, 505.0);
    v.check(
        e <= 0.25,
        format!(
            "Min-CCV violation cost {:.4} vs 505: rel err {:.3} (tol 0.25)",
            ccv.total_viol, e
        ),
    );
    let e = rel_err(mv.total_viol, 8.4);
    v.check(
        e <= 0.25,
        format!(
            "Min-V violation cost {:.4} vs 8.4: rel err {:.3} (tol 0.25)",
            mv.total_viol, e
        ),
    );
    v.check(
        elapsed < Duration::from_secs(1),
        format!("runtime {} (< 1s)", secs(elapsed)),
    );
    v
}

/// Instances with n <= 6 and m <= 3. Every instance has a cloud node, which
/// fits any generated task; instances with m >= 2 also have fog nodes.
fn tiny_instance(k: u64) -> Instance {
    let s = derive_seed(0xACCE, k);
    let n = 1 + (s % 6) as usize;
    let m = 1 + (s / 6 % 3) as usize;
    let fog = if m == 1 {
        0
    } else {
        1 + (s / 18 % (m as u64 - 1)) as usize
    };
    let tasks = generate_tasks(n, &TaskDistribution::default(), derive_seed(s, 0));
    let nodes = generate_nodes(fog, m - fog, &NodeDistribution::default(), derive_seed(s, 1));
    Instance::new(tasks, nodes).unwrap()
}

fn oracle_dominance() -> Verdict {
    let mut v = Verdict::new("oracle dominance: Exact <= every scheduler on 200 instances (n<=6, m<=3)");
    let start = Instant::now();
    let mut exceptions = Vec::new();
    let mut infeasible = 0;
    let mut mixed = 0;
    for k in 0..200 {
        let inst = tiny_instance(k);
        if inst.nodes.iter().any(|n| n.kind == fogsched::NodeKind::Fog)
            && inst.nodes.iter().any(|n| n.kind == fogsched::NodeKind::Cloud)
        {
            mixed += 1;
        }
        let config = SchedulerConfig {
            seed: k,
            ..SchedulerConfig::default()
        };
        let optimum = match run(SchedulerKind::Exact, &inst, &config) {
            Ok(o) => o.report.total,
            Err(_) => {
                infeasible += 1;
                continue;
            }
        };
        for kind in SchedulerKind::HEURISTICS {
            let total = run(kind, &inst, &config).unwrap().report.total;
            if optimum > total {
                exceptions.push(format!("instance {k}: exact {optimum} > {kind} {total}"));
            }
        }
    }
    let elapsed = start.elapsed();
    v.check(
        exceptions.is_empty(),
        format!("{} exceptions {:?}", exceptions.len(), exceptions.first()),
    );
    v.check(infeasible == 0, format!("{infeasible} instances infeasible"));
    v.details
        .push(format!("info {mixed} of 200 instances mix fog and cloud nodes"));
    v.check(
        elapsed < Duration::from_secs(120),
        format!("runtime {} (< 120s)", secs(elapsed)),
    );
    v
}

fn pdst_series(result: &ExperimentResult, kind: SchedulerKind) -> Vec<f64> {
    result
        .spec
        .values
        .iter()
        .map(|&x| result.row(x, kind).unwrap().pdst.avg)
        .collect()
}

fn experiment_two() -> Verdict {
    let mut v = Verdict::new("fog sweep: Min-V best PDST and violation cost everywhere, PDST near 67% / 92%");
    let start = Instant::now();
    let mut spec = builtin_experiment(2).unwrap();
    spec.trials = 3;
    spec.genetic.generations = 200;
    let result = run_experiment(&spec, None).unwrap();
    let elapsed = start.elapsed();

    let csv = render_csv(&result.rows, &ReportMetadata::from_result(&result));
    v.check(
        csv.lines()
            .any(|l| l.starts_with("# genetic: ") && l.contains("\"generations\":200")),
        "report metadata records GA generations = 200".into(),
    );
    for &fog in &spec.values {
        let best = result.row(fog, SchedulerKind::MinV).unwrap();
        let others: Vec<_> = spec
            .schedulers
            .iter()
            .filter(|&&k| k != SchedulerKind::MinV)
            .map(|&k| result.row(fog, k).unwrap())
            .collect();
        let top_pdst = others.iter().all(|r| best.pdst.avg >= r.pdst.avg);
        let low_viol = others.iter().all(|r| best.c_viol.avg <= r.c_viol.avg);
        let runner_up = others.iter().map(|r| r.pdst.avg).fold(f64::MIN, f64::max);
        let least_other = others.iter().map(|r| r.c_viol.avg).fold(f64::MAX, f64::min);
        v.check(
            top_pdst && low_viol,
            format!(
                "fog={fog}: Min-V PDST {:.2} (next best {:.2}), c_viol {:.3} (next lowest {:.3})",
                best.pdst.avg, runner_up, best.c_viol.avg, least_other
            ),
        );
    }
    for (fog, target) in [(10, 67.0), (50, 92.0)] {
        let p = result.row(fog, SchedulerKind::MinV).unwrap().pdst.avg;
        v.check(
            (p - target).abs() <= 15.0,
            format!("Min-V PDST at fog={fog}: {p:.2} (want {target} +/- 15)"),
        );
    }
    let failed: usize = result.rows.iter().map(|r| r.failed_trials).sum();
    v.check(failed == 0, format!("{failed} failed scheduler runs"));
    v.check(
        elapsed < Duration::from_secs(600),
        format!("runtime {} (< 600s)", secs(elapsed)),
    );
    v
}

fn experiment_one() -> Verdict {
    let mut v = Verdict::new("task sweep: PDST non-increasing in the task count for every scheduler");
    let start = Instant::now();
    let spec = builtin_experiment(1).unwrap();
    let result = run_experiment(&spec, None).unwrap();
    for &kind in &spec.schedulers {
        let series = pdst_series(&result, kind);
        let rises: Vec<f64> = series.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).collect();
        let stochastic = matches!(kind, SchedulerKind::Random | SchedulerKind::Genetic);
        let ok = rises.is_empty() || (stochastic && rises.len() == 1 && rises[0] <= 2.0);
        let shown: Vec<String> = series.iter().map(|p| format!("{p:.2}")).collect();
        v.check(ok, format!("{kind}: [{}], rises {rises:.2?}", shown.join(", ")));
    }
    v.details.push(format!(
        "info runtime {} ({} trials, GA {} generations)",
        secs(start.elapsed()),
        spec.trials,
        spec.genetic.generations
    ));
    v
}

fn cost_units() -> Verdict {
    let mut v = Verdict::new("cost model: hand-evaluated examples within rel 1e-9");
    let inst = toy_instance();
    let (t1, t6, n1, n3) = (&inst.tasks[0], &inst.tasks[5], &inst.nodes[0], &inst.nodes[2]);
    let cases = [
        ("execution t1@n1", execution_time(t1, n1), 4000.0 / 3.0),
        ("execution t6@n3", execution_time(t6, n3), 1000.0),
        ("computation t1@n1", computation_cost(t1, n1), 3.4),
        ("computation t6@n3", computation_cost(t6, n3), 7.5),
        ("communication t1@n1", communication_cost(t1, n1), 0.006),
        ("communication t6@n3", communication_cost(t6, n3), 0.176),
        ("response t1@n1", response_time(t1, n1, 0.0), 2.0 + 4000.0 / 3.0),
        ("response t6@n3 after 500 ms", response_time(t6, n3, 500.0), 1800.0),
        ("violation % 1200 vs 1000", violation_pct(1200.0, 1000.0), 20.0),
        ("violation % 2000 vs 500", violation_pct(2000.0, 500.0), 300.0),
        (
            "violation cost 20% qos 90 pen 0.3",
            violation_cost(20.0, 90.0, 0.3, ViolationPolicy::Clamped),
            3.0,
        ),
        (
            "raw violation cost 2% qos 94 pen 0.2",
            violation_cost(2.0, 94.0, 0.2, ViolationPolicy::Raw),
            -0.8,
        ),
    ];
    for (name, got, want) in cases {
        v.check(rel_err(got, want) <= 1e-9, format!("{name}: {got} vs {want}"));
    }
    let zero = [
        ("on-time violation %", violation_pct(999.0, 1000.0)),
        (
            "tolerated lateness, clamped",
            violation_cost(2.0, 94.0, 0.2, ViolationPolicy::Clamped),
        ),
    ];
    for (name, got) in zero {
        v.check(got == 0.0, format!("{name}: {got} == 0"));
    }
    v
}

fn best_of<F: FnMut()>(runs: usize, mut f: F) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn scaling() -> Verdict {
    let mut v = Verdict::new("scaling at m=100: Min-CCV doubles n in < 3x time, Min-V < 5s at n=1e5");
    let nodes = generate_nodes(70, 30, &NodeDistribution::default(), 5);
    let big = Instance::new(generate_tasks(100_000, &TaskDistribution::default(), 6), nodes.clone()).unwrap();
    let half = Instance::new(big.tasks[..50_000].to_vec(), nodes).unwrap();
    let policy = ViolationPolicy::Clamped;
    let t_half = best_of(5, || {
        min_ccv(&half, policy).unwrap();
    });
    let t_big = best_of(5, || {
        min_ccv(&big, policy).unwrap();
    });
    let ratio = t_big.as_secs_f64() / t_half.as_secs_f64();
    v.check(
        ratio < 3.0,
        format!(
            "Min-CCV {} at 5e4, {} at 1e5: ratio {ratio:.2} (< 3)",
            secs(t_half),
            secs(t_big)
        ),
    );
    let t_minv = best_of(3, || {
        min_v(&big, policy).unwrap();
    });
    v.check(
        t_minv < Duration::from_secs(5),
        format!("Min-V {} at 1e5 (< 5s)", secs(t_minv)),
    );
    v
}

fn fogsched(dir: &Path, args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fogsched"))
        .current_dir(dir)
        .env_remove("FOGSCHED_CONFIG")
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn determinism() -> Verdict {
    let mut v = Verdict::new("determinism: CLI reruns with identical seeds write byte-identical files");
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    fs::write(
        root.join("exp.toml"),
        "seed = 3\n[experiment]\nbuiltin = 1\nvalues = [20, 40]\nfog = 4\ncloud = 2\ntrials = 2\n[genetic]\ngenerations = 30\n",
    )
    .unwrap();
    let mut files = Vec::new();
    for run in ["a", "b"] {
        let d = root.join(run);
        fs::create_dir_all(&d).unwrap();
        let jobs = if run == "a" { "1" } else { "4" };
        let mut cmds: Vec<Vec<String>> = vec![vec![
            "generate",
            "--tasks",
            "40",
            "--fog",
            "5",
            "--cloud",
            "3",
            "--seed",
            "8",
            "-o",
            "inst.json",
        ]
        .into_iter()
        .map(String::from)
        .collect()];
        for s in SchedulerKind::HEURISTICS {
            cmds.push(
                [
                    "schedule",
                    "-i",
                    "inst.json",
                    "-s",
                    s.name(),
                    "--seed",
                    "8",
                    "--ga-generations",
                    "50",
                    "-o",
                ]
                .into_iter()
                .map(String::from)
                .chain([format!("{s}.json")])
                .collect(),
            );
        }
        for format in ["csv", "json"] {
            cmds.push(
                [
                    "experiment",
                    "--config",
                    "../exp.toml",
                    "--jobs",
                    jobs,
                    "--format",
                    format,
                    "--output-dir",
                    format,
                ]
                .into_iter()
                .map(String::from)
                .collect(),
            );
        }
        for cmd in &cmds {
            let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
            let (code, _) = fogsched(&d, &args);
            v.check(
                code == Some(0),
                format!("run {run}: `fogsched {}` exit {code:?}", cmd.join(" ")),
            );
        }
        if run == "a" {
            files = [
                "inst.json".to_string(),
                "csv/report.csv".into(),
                "json/report.json".into(),
            ]
            .into_iter()
            .chain(SchedulerKind::HEURISTICS.iter().map(|s| format!("{s}.json")))
            .collect();
        }
    }
    v.details.retain(|d| d.starts_with("MISS"));
    for f in &files {
        let (a, b) = (fs::read(root.join("a").join(f)), fs::read(root.join("b").join(f)));
        let same = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
        v.check(same, format!("{f} identical across reruns"));
    }
    v
}

fn property_suites() -> Verdict {
    let mut v = Verdict::new("property suites over 100 fuzzed instances");
    let (mut decomposition, mut zeroing, mut feasible, mut round_trip) = (0, 0, 0, 0);
    for k in 0..100u64 {
        let s = derive_seed(0xF0, k);
        let n = 1 + (s % 60) as usize;
        let fog = (s / 60 % 8) as usize;
        let cloud = 1 + (s / 480 % 4) as usize;
        let mut inst = Instance::new(
            generate_tasks(n, &TaskDistribution::default(), derive_seed(s, 0)),
            generate_nodes(fog, cloud, &NodeDistribution::default(), derive_seed(s, 1)),
        )
        .unwrap();
        let config = SchedulerConfig {
            seed: s,
            genetic: fogsched::GeneticParams {
                population: 20,
                generations: 20,
                ..Default::default()
            },
            ..SchedulerConfig::default()
        };
        let (mut dec, mut zero, mut feas) = (true, true, true);
        for kind in SchedulerKind::HEURISTICS {
            let out = run(kind, &inst, &config).unwrap();
            let r = &out.report;
            let parts = r.total_comp + r.total_comm + r.total_viol;
            let per_task: f64 = r.per_task.iter().map(|c| c.total()).sum();
            dec &= rel_err(parts, r.total) <= 1e-9 && rel_err(per_task, r.total) <= 1e-9;
            zero &= r
                .per_task
                .iter()
                .zip(&inst.tasks)
                .all(|(c, t)| c.response_ms > t.deadline_ms || (c.violation_pct == 0.0 && c.c_viol == 0.0));
            feas &= out.schedule.check(&inst).is_ok()
                && out
                    .schedule
                    .assignment
                    .iter()
                    .zip(&inst.tasks)
                    .all(|(&j, t)| inst.nodes[j].mem_mb >= t.mem_mb);
        }
        decomposition += usize::from(dec);
        zeroing += usize::from(zero);
        feasible += usize::from(feas);

        // Awkward but valid floats survive a save/load cycle bit for bit.
        let bits = splitmix64(s);
        inst.tasks[0].size_mi = 0.1 + 0.2 + (bits % 1000) as f64 * f64::EPSILON;
        inst.nodes[0].cost_bw = f64::from_bits(0x3F50_0000_0000_0000 | (bits >> 12));
        let text = to_json(&inst);
        round_trip += usize::from(
            parse_instance(&text, Path::new("fuzz.json")).is_ok_and(|back| back == inst && to_json(&back) == text),
        );
    }
    v.check(
        decomposition == 100,
        format!("totals decomposition {decomposition}/100"),
    );
    v.check(zeroing == 100, format!("violation zeroing {zeroing}/100"));
    v.check(
        feasible == 100,
        format!("memory feasibility of all outputs {feasible}/100"),
    );
    v.check(round_trip == 100, format!("save/load round-trip {round_trip}/100"));

    let mut two = Instance::new(
        generate_tasks(10_000, &TaskDistribution::default(), 1),
        generate_nodes(2, 0, &NodeDistribution::default(), 1),
    )
    .unwrap();
    two.nodes.iter_mut().for_each(|n| n.mem_mb = 256.0);
    let shares: Vec<f64> = (0..100)
        .map(|seed| {
            let s = random_scheduler(&two, seed).unwrap();
            s.assignment.iter().filter(|&&j| j == 0).count() as f64 / 100.0
        })
        .collect();
    let worst = shares.iter().map(|p| (p - 50.0).abs()).fold(0.0, f64::max);
    v.check(
        worst <= 3.0,
        format!("Random split at n=1e4, 2 nodes: worst share off 50% by {worst:.2} points over 100 seeds"),
    );
    v
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1", toy_direction),
        ("2", oracle_dominance),
        ("3", experiment_two),
        ("4", experiment_one),
        ("5", cost_units),
        ("6", scaling),
        ("7", determinism),
        ("8", property_suites),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let v = check();
        println!("{} criterion {id}: {}", if v.ok { "PASS" } else { "FAIL" }, v.summary);
        for d in &v.details {
            println!("    {d}");
        }
        failed += usize::from(!v.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
