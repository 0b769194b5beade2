use std::path::Path;
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use purespin::scenario::{self, Report, Scenario, Status, BUILTINS};
use purespin::verify::{self, SuiteConfig, SuiteReport, SUITES};
use purespin::{Gaussian, Rational};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "purespin", version, about = "Exact linear Dirac reduction and pure spinor checks")]
struct Cli {
    /// List built-in scenarios and property suites.
    #[arg(long)]
    list: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (one object or an array) or a built-in by name.
    Run {
        #[arg(long, required = true)]
        scenario: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include wall-clock timing in reports.
        #[arg(long)]
        timing: bool,
    },
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
        #[arg(long, default_value_t = 1)]
        min_dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Field::Rational)]
        field: Field,
        /// Restrict to the named suites.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Rational,
    Gaussian,
}

enum Job {
    Builtin(String),
    Scenario(Scenario),
}

fn load(arg: &str) -> Result<Vec<Job>> {
    if BUILTINS.contains(&arg) && !Path::new(arg).exists() {
        return Ok(vec![Job::Builtin(arg.to_string())]);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("{arg}: not a built-in and not a readable file"))?;
    let list = scenario::parse_scenarios(&text).map_err(|e| anyhow!("{arg}: {e}"))?;
    Ok(list.into_iter().map(Job::Scenario).collect())
}

fn execute(job: &Job, timing: bool) -> Result<Report> {
    let start = Instant::now();
    let mut rep = match job {
        Job::Builtin(name) => scenario::builtin(name)?,
        Job::Scenario(s) => scenario::run(s).map_err(|e| anyhow!("scenario {:?}: {e}", s.id))?,
    };
    if timing {
        rep.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(rep)
}

/// Runs jobs on scoped threads; results come back in input order.
fn parallel<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|it| s.spawn(|| f(it))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn print_report(r: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("report serializes")),
        Format::Text => {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAGGED",
            };
            println!("{status} {}", r.id);
            for (name, ok) in &r.checks {
                println!("  {} {name}", if *ok { "ok  " } else { "FAIL" });
            }
            for m in &r.mismatches {
                println!("  mismatch: {m}");
            }
            if let Some(t) = r.timing_ms {
                println!("  {t:.1} ms");
            }
        }
    }
}

fn run_cmd(args: &[String], format: Format, timing: bool) -> Result<u8> {
    let mut jobs = Vec::new();
    for a in args {
        jobs.extend(load(a)?);
    }
    let reports = parallel(&jobs, |j| execute(j, timing)).into_iter().collect::<Result<Vec<_>>>()?;
    for r in &reports {
        print_report(r, format);
    }
    Ok(if reports.iter().any(|r| r.status == Status::Fail) { EXIT_FAIL } else { 0 })
}

#[derive(Serialize)]
struct SelftestReport<'a> {
    schema_version: u32,
    seed: u64,
    min_dim: usize,
    max_dim: usize,
    trials: usize,
    status: Status,
    suites: &'a [SuiteReport],
}

#[allow(clippy::too_many_arguments)]
fn selftest_cmd(
    seed: u64,
    min_dim: usize,
    max_dim: usize,
    trials: usize,
    field: Field,
    names: &[String],
    format: Format,
) -> Result<u8> {
    if min_dim == 0 || min_dim > max_dim || max_dim > purespin::exterior::MAX_DIM {
        return Err(anyhow!(
            "dimension bounds must satisfy 1 <= min-dim <= max-dim <= {}",
            purespin::exterior::MAX_DIM
        ));
    }
    let names: Vec<&str> = if names.is_empty() {
        SUITES.to_vec()
    } else {
        for n in names {
            if !SUITES.contains(&n.as_str()) {
                return Err(anyhow!("unknown suite {n:?}; see --list"));
            }
        }
        names.iter().map(String::as_str).collect()
    };
    let cfg = SuiteConfig::new(seed, trials, min_dim, max_dim);
    let reports: Vec<SuiteReport> = parallel(&names, |n| match field {
        Field::Rational => verify::run_named::<Rational>(n, cfg),
        Field::Gaussian => verify::run_named::<Gaussian>(n, cfg),
    })
    .into_iter()
    .map(|r| r.expect("suite names were checked"))
    .collect();
    let ok = reports.iter().all(SuiteReport::ok);
    match format {
        Format::Json => {
            let rep = SelftestReport {
                schema_version: scenario::SCHEMA_VERSION,
                seed,
                min_dim,
                max_dim,
                trials,
                status: if ok { Status::Pass } else { Status::Fail },
                suites: &reports,
            };
            println!("{}", serde_json::to_string_pretty(&rep)?);
        }
        Format::Text => {
            println!("seed {seed}, dims {min_dim}..={max_dim}, {trials} trials");
            for r in &reports {
                println!("{} {}", if r.ok() { "PASS" } else { "FAIL" }, r.summary());
                for f in &r.failures {
                    println!("  trial {} (n = {}): {}: {}", f.trial, f.dim, f.check, f.detail);
                }
            }
        }
    }
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    if cli.list {
        println!("built-in scenarios:");
        for b in BUILTINS {
            println!("  {b}");
        }
        println!("property suites:");
        for s in SUITES {
            println!("  {s}");
        }
        return ExitCode::SUCCESS;
    }
    let result = match cli.command {
        Some(Command::Run { scenario, format, timing }) => run_cmd(&scenario, format, timing),
        Some(Command::Selftest { seed, max_dim, min_dim, trials, field, suite, format }) => {
            selftest_cmd(seed, min_dim, max_dim, trials, field, &suite, format)
        }
        None => Err(anyhow!("nothing to do; try `purespin --help`")),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
