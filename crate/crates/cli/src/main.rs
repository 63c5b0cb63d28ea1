//! `amf`: count antimonotonic functions, list interval members, and run the
//! verification suites.

mod report;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use amf_core::dedekind::{dedekind_interval_recursion, dedekind_one_element, dedekind_span_expansion};
use amf_core::decomposition::parse_blocks;
use amf_core::enumeration::oracle::oracle_enumerate;
use amf_core::verify::{self, Check, Params, Verdict};
use amf_core::{AmfError, AntiChain, BigCount, Engine, GroundSet, SplitPolicy};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use report::RunReport;

#[derive(Parser)]
#[command(name = "amf", version, about = "Antimonotonic function intervals and Dedekind numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print |AMT(n)|.
    Count(CountArgs),
    /// List the members of an interval [lower .. upper].
    List(ListArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Span,
    Split,
    OneElement,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Span => "span",
            Method::Split => "split",
            Method::OneElement => "one-element",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Balanced,
    Descent,
}

impl From<Policy> for SplitPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Balanced => SplitPolicy::Balanced,
            Policy::Descent => SplitPolicy::Descent,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    PartitionGeneral,
    PartitionOrthogonal,
    IntervalDecomposition,
    Rank,
    Distance,
    Recursions,
    Young,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::PartitionGeneral => Check::PartitionGeneral,
            CheckArg::PartitionOrthogonal => Check::PartitionOrthogonal,
            CheckArg::IntervalDecomposition => Check::IntervalDecomposition,
            CheckArg::Rank => Check::Rank,
            CheckArg::Distance => Check::Distance,
            CheckArg::Recursions => Check::Recursions,
            CheckArg::Young => Check::Young,
        }
    }
}

#[derive(Args)]
struct Workers {
    /// Worker threads [default: available parallelism for count, 1 otherwise]
    #[arg(long, env = "AMT_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// How intervals are split during recursion.
    #[arg(long, value_enum, default_value_t = Policy::Balanced)]
    policy: Policy,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Method::Span)]
    method: Method,
    /// Split point for --method split.
    #[arg(long)]
    n1: Option<u32>,
    /// Also compute with every other applicable method and compare.
    #[arg(long)]
    cross_check: bool,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    workers: Workers,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long)]
    json: bool,
}

impl OutputArgs {
    fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, allow_hyphen_values = true)]
    lower: String,
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
    /// Ground set size [default: the largest element in either bound].
    #[arg(long)]
    n: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
    /// Print only the number of members.
    #[arg(long)]
    count_only: bool,
    #[command(flatten)]
    workers: Workers,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: CheckArg,
    #[arg(long)]
    n: Option<u32>,
    /// Antichain σ for partition-general or interval-decomposition.
    #[arg(long)]
    sigma: Option<String>,
    /// Set partition such as "1,2|3,4" for partition-orthogonal.
    #[arg(long)]
    blocks: Option<String>,
    /// Box height for young.
    #[arg(long)]
    rows: Option<u32>,
    /// Box width for young.
    #[arg(long)]
    cols: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    workers: Workers,
}

/// Exit status for failed checks or internal errors.
const FAILURE: u8 = 1;
/// Exit status for bad input.
const USAGE: u8 = 2;

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<AmfError> for Failure {
    fn from(e: AmfError) -> Self {
        match e {
            AmfError::Defect(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn engine(workers: &Workers, default_jobs: usize) -> Result<Engine, Failure> {
    let jobs = workers.jobs.map_or(default_jobs, |j| j as usize);
    Ok(Engine::new().with_policy(workers.policy.into()).with_jobs(jobs)?)
}

fn available_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn count_with(engine: &Engine, method: Method, n: u32, n1: Option<u32>) -> Result<BigCount, Failure> {
    Ok(match method {
        Method::Oracle => BigCount::from(oracle_enumerate(GroundSet::prefix(n))?.len() as u64),
        Method::Span => dedekind_span_expansion(engine, n)?,
        Method::OneElement => dedekind_one_element(engine, n)?,
        Method::Split => {
            let n1 = n1.ok_or_else(|| Failure::Usage("--method split needs --n1".into()))?;
            dedekind_interval_recursion(engine, n, n1)?
        }
    })
}

fn cross_check(engine: &Engine, n: u32, value: &BigCount) -> Result<Verdict, Failure> {
    let mut results = Vec::new();
    if n <= amf_core::enumeration::oracle::ORACLE_MAX_ELEMENTS {
        results.push(("oracle".to_string(), count_with(engine, Method::Oracle, n, None)?));
    }
    results.push(("span".to_string(), count_with(engine, Method::Span, n, None)?));
    if n >= 1 {
        results.push(("one-element".to_string(), count_with(engine, Method::OneElement, n, None)?));
    }
    for n1 in 1..n {
        results.push((format!("split n1={n1}"), count_with(engine, Method::Split, n, Some(n1))?));
    }
    let mut details = Map::new();
    let mut counterexample = None;
    for (name, got) in &results {
        details.insert(name.clone(), Value::String(got.to_string()));
        if got != value && counterexample.is_none() {
            counterexample = Some(format!("{name} gives {got}, expected {value}"));
        }
    }
    Ok(Verdict {
        check: "cross-check".into(),
        passed: counterexample.is_none(),
        details,
        counterexample,
    })
}

fn cmd_count(args: &CountArgs, started: Instant) -> Result<u8, Failure> {
    let engine = engine(&args.workers, available_jobs())?;
    let value = count_with(&engine, args.method, args.n, args.n1)?;
    let verdicts = if args.cross_check {
        vec![cross_check(&engine, args.n, &value)?]
    } else {
        Vec::new()
    };
    let passed = verdicts.iter().all(|v| v.passed);
    let mut out = BufWriter::new(io::stdout().lock());
    if args.output.json() {
        let mut result = json!({"count": value.to_string(), "n": args.n});
        if let Some(n1) = args.n1 {
            result["n1"] = json!(n1);
        }
        let report = RunReport::new("count", Some(args.method.name()), result, engine.jobs(), verdicts, started);
        report.write(&mut out)?;
    } else {
        writeln!(out, "{value}")?;
        for v in &verdicts {
            write!(out, "{}", v.to_text())?;
        }
    }
    out.flush()?;
    Ok(if passed { 0 } else { FAILURE })
}

fn parse_bound(text: &str, ground: GroundSet, which: &str) -> Result<AntiChain, Failure> {
    AntiChain::parse(text, ground, true).map_err(|e| Failure::Usage(format!("--{which}: {e}")))
}

fn cmd_list(args: &ListArgs, started: Instant) -> Result<u8, Failure> {
    let n = args.n.unwrap_or_else(|| {
        AntiChain::max_element_in_text(&args.lower).max(AntiChain::max_element_in_text(&args.upper))
    });
    if n > amf_core::MAX_ELEMENT {
        return Err(Failure::Usage(format!("ground size {n} exceeds {}", amf_core::MAX_ELEMENT)));
    }
    let ground = GroundSet::prefix(n);
    let lower = parse_bound(&args.lower, ground, "lower")?;
    let upper = parse_bound(&args.upper, ground, "upper")?;
    let engine = engine(&args.workers, 1)?;
    let json = args.output.json();
    // Unlocked so worker threads can share it.
    let mut out = BufWriter::new(io::stdout());

    let mut members: Vec<Value> = Vec::new();
    let count = if args.count_only {
        engine.count_interval(&lower, &upper)?
    } else if json {
        if engine.jobs() > 1 {
            let shared = Mutex::new(Vec::new());
            let count = engine.list_interval_concurrent(&lower, &upper, |k| {
                shared.lock().expect("sink poisoned").push(k.to_json())
            })?;
            members = shared.into_inner().expect("sink poisoned");
            count
        } else {
            engine.list_interval(&lower, &upper, |k| members.push(k.to_json()))?
        }
    } else if engine.jobs() > 1 {
        let shared = Mutex::new(&mut out);
        let count = engine.list_interval_concurrent(&lower, &upper, |k| {
            // Write errors surface at the final flush.
            let _ = writeln!(shared.lock().expect("sink poisoned"), "{k}");
        })?;
        count
    } else {
        let mut failed = None;
        let count = engine.list_interval(&lower, &upper, |k| {
            if failed.is_none() {
                failed = writeln!(out, "{k}").err();
            }
        })?;
        if let Some(e) = failed {
            return Err(e.into());
        }
        count
    };

    if json {
        let mut result = json!({
            "lower": lower.to_string(),
            "upper": upper.to_string(),
            "n": n,
            "count": count.to_string(),
        });
        if !args.count_only {
            result["members"] = Value::Array(members);
        }
        RunReport::new("list", None, result, engine.jobs(), Vec::new(), started).write(&mut out)?;
    } else if args.count_only {
        writeln!(out, "{count}")?;
    } else {
        writeln!(out, "count: {count}")?;
    }
    out.flush()?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, started: Instant) -> Result<u8, Failure> {
    let engine = engine(&args.workers, 1)?;
    let blocks = args
        .blocks
        .as_deref()
        .map(parse_blocks)
        .transpose()
        .map_err(|e| Failure::Usage(format!("--blocks: {e}")))?;
    let params = Params {
        n: args.n,
        sigma: args.sigma.clone(),
        blocks,
        rows: args.rows,
        cols: args.cols,
    };
    let verdict = verify::run(&engine, args.check.into(), &params)?;
    let passed = verdict.passed;
    let mut out = BufWriter::new(io::stdout().lock());
    if args.output.json() {
        let result = json!({"check": verdict.check, "passed": passed});
        RunReport::new("verify", None, result, engine.jobs(), vec![verdict], started).write(&mut out)?;
    } else {
        write!(out, "{}", verdict.to_text())?;
    }
    out.flush()?;
    Ok(if passed { 0 } else { FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Count(a) => cmd_count(a, started),
        Command::List(a) => cmd_list(a, started),
        Command::Verify(a) => cmd_verify(a, started),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(FAILURE)
        }
    }
}
