//! `tricount` command-line front end.

mod bench;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use tricount::graph::load_edge_list;
use tricount::{
    count_ordered, estimate, generate, EstimateReport, EstimatorParams, Family, GenParams,
    GenSpec, Graph, Profile, QueryOracle,
};

#[derive(Parser, Debug)]
#[command(name = "tricount", version, about = "Sublinear triangle counting in the general graph query model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count triangles exactly.
    Exact(ExactArgs),
    /// Run the query-model estimator.
    Estimate(EstimateArgs),
    /// Write a lower-bound family instance and its JSON sidecar.
    Gen(GenArgs),
    /// Run the estimator over every instance and seed of a manifest.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct ExactArgs {
    /// Edge-list file.
    path: PathBuf,
    /// Print t, t_v and t_e as JSON.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub(crate) struct RunArgs {
    #[arg(long, default_value_t = 0.5, value_parser = parse_epsilon)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Practical)]
    pub profile: ProfileArg,
    /// Query cap for the search stage; exhausting it triggers the exact fallback.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Record wall-clock time (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    path: PathBuf,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also count exactly and report the relative error.
    #[arg(long)]
    exact_check: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relabel vertices by a uniform permutation.
    #[arg(long)]
    shuffle: bool,
    /// Edge-list path; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// JSON array of `{"path": ..., "seeds": [...]}` or `{"genspec": {...}, "seeds": [...]}`.
    manifest: PathBuf,
    #[command(flatten)]
    run: RunArgs,
    /// Emit a JSON array instead of CSV.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ProfileArg {
    Theoretical,
    Practical,
}

impl ProfileArg {
    pub fn profile(self) -> Profile {
        match self {
            ProfileArg::Theoretical => Profile::Theoretical,
            ProfileArg::Practical => Profile::Practical,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProfileArg::Theoretical => "theoretical",
            ProfileArg::Practical => "practical",
        }
    }
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if e > 0.0 && e <= 1.0 {
        Ok(e)
    } else {
        Err(format!("epsilon must lie in (0, 1], got {e}"))
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {s:?}; expected one of {}", names.join(", "))
    })
}

/// An error tagged with the process exit code it maps to.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub(crate) const USAGE: u8 = 2;
pub(crate) const INPUT: u8 = 3;
pub(crate) const INTERNAL: u8 = 4;

pub(crate) type CliResult<T> = Result<T, Failure>;

pub(crate) trait Tag<T> {
    fn tag(self, code: u8) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> Tag<T> for Result<T, E> {
    fn tag(self, code: u8) -> CliResult<T> {
        self.map_err(|e| Failure { code, error: e.into() })
    }
}

pub(crate) fn read_graph(path: &Path) -> CliResult<Graph> {
    let file = File::open(path)
        .with_context(|| format!("cannot open {}", path.display()))
        .tag(INPUT)?;
    load_edge_list(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", path.display()))
        .tag(INPUT)
}

fn open_output(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p)
                .with_context(|| format!("cannot create {}", p.display()))
                .tag(INPUT)?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>) -> CliResult<()> {
    w.flush().context("write failed").tag(INPUT)
}

/// Runs the estimator with the profile's parameters and the CLI overrides.
pub(crate) fn run_estimate(g: &Graph, run: &RunArgs, seed: u64) -> CliResult<EstimateReport> {
    let mut params = EstimatorParams::for_profile(run.profile.profile());
    params.search_budget = run.budget;
    let mut oracle = QueryOracle::unbounded(g);
    let mut report = estimate(&mut oracle, run.epsilon, &params, seed)
        .map_err(|e| anyhow!("estimator failed without a cap: {e}"))
        .tag(INTERNAL)?;
    if !run.timing {
        report.wall_ms = 0;
    }
    Ok(report)
}

/// `|X - t| / max(t, 1)`, finite even on triangle-free inputs.
pub(crate) fn relative_error(estimate: f64, exact: u64) -> f64 {
    (estimate - exact as f64).abs() / (exact.max(1) as f64)
}

fn cmd_exact(args: &ExactArgs) -> CliResult<()> {
    let g = read_graph(&args.path)?;
    let stats = count_ordered(&g);
    stats
        .check_identities(&g)
        .map_err(|e| anyhow!("counting identity violated: {e}"))
        .tag(INTERNAL)?;
    let mut w = open_output(args.out.as_deref())?;
    if args.json {
        serde_json::to_writer(&mut w, &stats).tag(INTERNAL)?;
        writeln!(w).tag(INPUT)?;
    } else {
        writeln!(w, "t={}", stats.t).tag(INPUT)?;
    }
    finish(w)
}

/// JSON shape of `estimate --json`: the report plus CLI context.
#[derive(Debug, Serialize, Deserialize)]
pub struct EstimateOutput {
    #[serde(flatten)]
    pub report: EstimateReport,
    pub profile: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<f64>,
}

fn cmd_estimate(args: &EstimateArgs) -> CliResult<()> {
    let g = read_graph(&args.path)?;
    let report = run_estimate(&g, &args.run, args.seed)?;
    let exact = args.exact_check.then(|| count_ordered(&g).t);
    let out = EstimateOutput {
        profile: args.run.profile.name().to_string(),
        exact,
        rel_err: exact.map(|t| relative_error(report.estimate, t)),
        report,
    };
    let mut w = open_output(args.out.as_deref())?;
    if args.json {
        serde_json::to_writer(&mut w, &out).tag(INTERNAL)?;
        writeln!(w).tag(INPUT)?;
    } else {
        write_estimate_text(&mut w, &out).tag(INPUT)?;
    }
    finish(w)
}

fn write_estimate_text(w: &mut dyn Write, out: &EstimateOutput) -> io::Result<()> {
    let r = &out.report;
    let q = r.queries.total;
    writeln!(w, "estimate={}", r.estimate)?;
    writeln!(w, "epsilon={} profile={} seed={}", r.epsilon, out.profile, r.seed)?;
    writeln!(w, "fallback_used={}", r.fallback_used)?;
    writeln!(w, "runs={} levels={} search_cap={}", r.runs, r.levels, r.search_cap)?;
    if let Some(a) = r.advice {
        writeln!(w, "m_bar={} t_bar={}", a.m_bar, a.t_bar)?;
    }
    writeln!(
        w,
        "queries degree={} neighbor={} pair={} vertex_samples={} total={}",
        q.degree_queries,
        q.neighbor_queries,
        q.pair_queries,
        q.vertex_samples,
        q.total()
    )?;
    if let (Some(t), Some(e)) = (out.exact, out.rel_err) {
        writeln!(w, "exact={t} rel_err={e}")?;
    }
    if r.wall_ms > 0 {
        writeln!(w, "wall_ms={}", r.wall_ms)?;
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn cmd_gen(args: &GenArgs) -> CliResult<()> {
    let spec = GenSpec {
        family: args.family,
        params: GenParams {
            n: args.n,
            side: args.side,
            r: args.r,
            k: args.k,
            t: args.t,
        },
        seed: args.seed,
        shuffle: args.shuffle,
    };
    let result = generate(&spec).tag(USAGE)?;
    let sidecar = result.sidecar(spec.seed, spec.shuffle);
    if count_ordered(&result.graph).t != result.exact_t {
        return Err(anyhow!("generated graph does not carry its declared count")).tag(INTERNAL);
    }
    let mut w = open_output(Some(&args.out))?;
    result.graph.write_edge_list(&mut w).tag(INPUT)?;
    finish(w)?;
    let side = sidecar_path(&args.out);
    let mut w = open_output(Some(&side))?;
    serde_json::to_writer_pretty(&mut w, &sidecar).tag(INTERNAL)?;
    writeln!(w).tag(INPUT)?;
    finish(w)?;
    println!(
        "wrote {} (n={} m={}) exact_t={} [{}]",
        args.out.display(),
        sidecar.n,
        sidecar.m,
        sidecar.exact_t,
        sidecar.formula
    );
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> CliResult<()> {
    let rows = bench::run(&args.manifest, &args.run)?;
    let mut w = open_output(args.out.as_deref())?;
    if args.json {
        serde_json::to_writer_pretty(&mut w, &rows).tag(INTERNAL)?;
        writeln!(w).tag(INPUT)?;
    } else {
        bench::write_csv(&mut w, &rows).tag(INPUT)?;
    }
    finish(w)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Exact(a) => cmd_exact(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
