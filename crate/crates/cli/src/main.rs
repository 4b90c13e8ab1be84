//! `godan`: generate godan graphs, build and verify Steiner tree packings,
//! run sweeps, oracles and the acceptance suite.
//!
//! Exit codes: 0 success, 1 verification failure (or a failed run), 2 usage
//! error. Output goes to `--out`, else to a file under `$GODAN_OUT_DIR`,
//! else to stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use godan::export::{graph_dot, graph_json, read_tree_set, tree_set_dot, tree_set_json};
use godan::idst::godan_graph;
use godan::oracle::{kappa_k_exact, kappa_s_exact, OracleOptions, Policy};
use godan::sweep::{run_sweep, Subsets, SweepOptions};
use godan::{build_idsts_with, AltNetwork, BuildOptions, Error, GodanGraph, Graph, Vertex};
use serde_json::json;

const OUT_DIR_VAR: &str = "GODAN_OUT_DIR";

#[derive(Parser)]
#[command(name = "godan", version, about = "Godan graphs and internally disjoint Steiner tree packings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump EA_n as JSON or DOT.
    Gen {
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify n - 1 trees for one 4-set.
    Idst {
        #[command(flatten)]
        common: Common,
        /// Four distinct one-line permutations, comma-separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        s: Vec<String>,
        #[command(flatten)]
        fallback: Fallback,
    },
    /// Build and verify packings for many 4-sets.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        fallback: Fallback,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Fill the millis column (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Exact packing numbers: one set with --s, or kappa_k with --k.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        s: Vec<String>,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Run on AN_n instead of EA_n.
        #[arg(long, value_enum, default_value_t = Family::Ea)]
        graph: Family,
        /// Search nodes per packing question.
        #[arg(long, default_value_t = OracleOptions::default().budget)]
        budget: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the acceptance criteria.
    Accept {
        /// Criteria to run (default: all ten).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    /// Cluster position to split at first (default n).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (default: a file under $GODAN_OUT_DIR, else stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PolicyArgs {
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Number of seeded random 4-sets.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Fallback {
    /// Rerun by exact packing search when a construction fails; the result
    /// is then tagged suspect. On unless set to false.
    #[arg(long, num_args = 0..=1, default_value_t = true, default_missing_value = "true", action = clap::ArgAction::Set)]
    fallback_search: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ea,
    An,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Construction(_) | Error::BudgetExhausted(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { common } => gen(&common),
        Command::Idst { common, s, fallback } => idst(&common, &s, fallback.fallback_search),
        Command::Sweep { common, policy, fallback, jobs, timing } => {
            sweep(&common, &policy, fallback.fallback_search, jobs, timing)
        }
        Command::Oracle { common, k, s, policy, graph, budget, jobs } => {
            with_jobs(jobs, || oracle(&common, k, &s, &policy, graph, budget))
        }
        Command::Accept { only, format, out, jobs } => with_jobs(jobs, || accept(&only, format, out)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("godan: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn with_jobs(jobs: Option<usize>, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| usage(format!("--jobs: {e}")))?
            .install(f),
    }
}

/// Writes to `out`, or to `default_name` under `$GODAN_OUT_DIR`, or stdout.
fn emit(out: Option<&PathBuf>, default_name: &str, text: &str) -> Result<Option<PathBuf>, Failure> {
    let path = out.cloned().or_else(|| std::env::var_os(OUT_DIR_VAR).map(|d| PathBuf::from(d).join(default_name)));
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(Error::from)?;
            }
            std::fs::write(&p, text).map_err(Error::from)?;
            eprintln!("wrote {}", p.display());
            Ok(Some(p))
        }
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::from(e).into()),
                _ => Ok(None),
            }
        }
    }
}

fn graph(n: usize) -> Result<&'static GodanGraph, Failure> {
    godan_graph(n).map_err(Failure::from)
}

fn parse_set(g: &GodanGraph, s: &[String]) -> Result<Vec<Vertex>, Failure> {
    let vs = s.iter().map(|l| g.parse_vertex(l.trim())).collect::<Result<Vec<_>, _>>()?;
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vs.len() {
        return Err(usage("terminals must be distinct"));
    }
    Ok(vs)
}

fn build_options(common: &Common, fallback: bool) -> BuildOptions {
    let mut opts = BuildOptions::default().with_fallback(fallback);
    opts.m = common.m;
    opts
}

fn gen(common: &Common) -> Outcome {
    let g = graph(common.n)?;
    let (text, ext) = match common.format.unwrap_or(Format::Json) {
        Format::Json => (graph_json(g)?, "json"),
        Format::Dot => (graph_dot(g, common.m.unwrap_or(g.n().max(4)))?, "dot"),
        _ => return Err(usage("gen writes json or dot")),
    };
    emit(common.out.as_ref(), &format!("ea{}.{ext}", g.n()), &text)?;
    Ok(true)
}

fn idst(common: &Common, s: &[String], fallback: bool) -> Outcome {
    let g = graph(common.n)?;
    if s.len() != 4 {
        return Err(usage(format!("--s needs 4 vertices, got {}", s.len())));
    }
    let terms = parse_set(g, s)?;
    let set = build_idsts_with(g, &terms, &build_options(common, fallback))?;
    let json = tree_set_json(g, &set)?;
    // Round trip: the emitted record must verify when read back.
    let loaded = read_tree_set(&json)?;
    eprintln!("{}: {} trees, case {}", s.join(","), set.trees.len(), set.case);
    if !loaded.is_valid() {
        eprintln!("verification failed:\n{}", loaded.report.summary());
        return Ok(false);
    }
    eprintln!("verified: {} checks passed", loaded.report.checks.len());
    let (text, ext) = match common.format.unwrap_or(Format::Json) {
        Format::Json => (json, "json"),
        Format::Dot => (tree_set_dot(g, &set), "dot"),
        _ => return Err(usage("idst writes json or dot")),
    };
    emit(common.out.as_ref(), &format!("idst_n{}_{}.{ext}", g.n(), s.join("-")), &text)?;
    Ok(true)
}

fn subsets(policy: &PolicyArgs, n: usize) -> Result<Subsets, Failure> {
    match (policy.exhaustive, policy.sample) {
        (true, _) => Ok(Subsets::Exhaustive),
        (false, Some(count)) => Ok(Subsets::Sample { count, seed: policy.seed }),
        (false, None) => Err(usage(format!("choose --exhaustive or --sample N for n = {n}"))),
    }
}

fn sweep(common: &Common, policy: &PolicyArgs, fallback: bool, jobs: Option<usize>, timing: bool) -> Outcome {
    let n = common.n;
    graph(n)?;
    let subs = subsets(policy, n)?;
    let stem = match &subs {
        Subsets::Sample { count, seed } => format!("sweep_n{n}_sample{count}_seed{seed}"),
        _ => format!("sweep_n{n}_exhaustive"),
    };
    let opts = SweepOptions { build: build_options(common, fallback), jobs, timing };
    let report = run_sweep(n, subs, &opts)?;
    let summary = report.summary_json()?;
    match common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let path = emit(common.out.as_ref(), &format!("{stem}.csv"), &report.to_csv()?)?;
            match path {
                Some(p) => {
                    emit(Some(&p.with_extension("summary.json")), "", &summary)?;
                }
                None => eprint!("{summary}"),
            }
        }
        Format::Json => {
            emit(common.out.as_ref(), &format!("{stem}.summary.json"), &summary)?;
        }
        _ => return Err(usage("sweep writes csv or json")),
    }
    eprintln!(
        "{} sets, trees min {:?} max {:?}, {} failures",
        report.rows.len(),
        report.min_trees(),
        report.max_trees(),
        report.failures()
    );
    Ok(report.failures() == 0 && report.rows.iter().all(|r| r.trees + 1 == n))
}

fn oracle(common: &Common, k: Option<usize>, s: &[String], policy: &PolicyArgs, family: Family, budget: u64) -> Outcome {
    let n = common.n;
    let ea = graph(n)?;
    let an;
    let g: &dyn Graph = match family {
        Family::Ea => ea,
        Family::An => {
            an = AltNetwork::new(n)?;
            &an
        }
    };
    let label = |v: Vertex| g.label(v);
    let opts = OracleOptions { budget, ..OracleOptions::default() };
    let row = |terms: &[Vertex], seed: Option<u64>| -> Result<serde_json::Value, Failure> {
        let r = kappa_s_exact(g, terms, opts)?;
        let witness = r.witness.as_ref().map(|ts| {
            ts.iter().map(|t| t.iter().map(|&(a, b)| [label(a), label(b)]).collect::<Vec<_>>()).collect::<Vec<_>>()
        });
        Ok(json!({
            "S": r.terminals.iter().map(|&v| label(v)).collect::<Vec<_>>(),
            "max_t": r.max_t,
            "exact": r.exact,
            "witness": witness,
            "nodes": r.explored,
            "seed": seed,
        }))
    };
    let value = if !s.is_empty() {
        if k.is_some() {
            return Err(usage("give either --s or --k"));
        }
        let terms: Vec<Vertex> = match family {
            Family::Ea => parse_set(ea, s)?,
            Family::An => {
                let an = AltNetwork::new(n)?;
                let vs = parse_set(ea, s)?;
                vs.iter()
                    .map(|&v| an.vertex(&ea.perm(v)).ok_or_else(|| usage(format!("{} is odd", ea.label(v)))))
                    .collect::<Result<_, _>>()?
            }
        };
        row(&terms, None)?
    } else {
        let k = k.ok_or_else(|| usage("oracle needs --k or --s"))?;
        let pol = match subsets(policy, n)? {
            Subsets::Sample { count, seed } => Policy::Sample { count, seed },
            _ => Policy::Exhaustive,
        };
        let r = kappa_k_exact(g, k, pol, opts)?;
        eprintln!("kappa_{k} = {}{}", r.value, if r.exact { "" } else { " (sampled upper bound)" });
        json!({
            "n": n,
            "graph": if family == Family::Ea { "EA" } else { "AN" },
            "k": k,
            "value": r.value,
            "exact": r.exact,
            "subsets": r.subsets,
            "seed": r.seed,
            "nodes": r.explored,
            "minimizer": row(&r.minimizer, r.seed)?,
        })
    };
    let text = serde_json::to_string_pretty(&value).map_err(Error::from)? + "\n";
    emit(common.out.as_ref(), &format!("oracle_n{n}.json"), &text)?;
    Ok(true)
}

fn accept(only: &[u8], format: Format, out: Option<PathBuf>) -> Outcome {
    if let Some(bad) = only.iter().find(|id| !(1..=10).contains(*id)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    let mut verdicts = Vec::new();
    for id in ids {
        let v = godan::acceptance::run_criterion(id);
        if format == Format::Text {
            println!("{}", v.line());
        } else {
            eprintln!("{}", v.line());
        }
        verdicts.push(v);
    }
    let pass = verdicts.iter().all(|v| v.pass);
    match format {
        Format::Text => println!("{}", if pass { "all criteria pass" } else { "some criteria fail" }),
        Format::Json => {
            let text = serde_json::to_string_pretty(&json!({ "pass": pass, "criteria": verdicts }))
                .map_err(Error::from)?
                + "\n";
            emit(out.as_ref(), "acceptance.json", &text)?;
        }
        _ => return Err(usage("accept writes text or json")),
    }
    Ok(pass)
}
