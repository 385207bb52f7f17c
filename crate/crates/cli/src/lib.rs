//! Command-line front end for the qbag library.
//!
//! [`run`] executes one command line and returns its output and exit code:
//! 0 success (or no violation), 1 violation or failed reproduction, 2 usage or input error.

pub mod file;
pub mod fuzz;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use qbag::corpus::{self, Example, Expectation};
use qbag::{
    check, contribution, contributions_to, evaluate, Aggregation, CheckConfig, Influence, Method, PrincipleId, Qbag,
    QbagError, Semantics,
};

pub use file::{parse_graph, serialize_graph, GraphFile};
pub use fuzz::{FuzzConfig, FuzzWitness};

#[derive(Debug, Default, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qbag", version, about = "Strengths, contributions and principle checks for acyclic QBAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print "id τ σ" for every argument in topological order
    Eval {
        file: PathBuf,
        #[command(flatten)]
        sem: SemanticsArgs,
    },
    /// Print contributions to a topic (one contributor, or the whole column)
    Contrib {
        file: PathBuf,
        #[command(flatten)]
        sem: SemanticsArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        topic: String,
        #[arg(long)]
        contributor: Option<String>,
    },
    /// CSV of the topic's final strength as one initial strength sweeps [0, 1]
    Sweep {
        file: PathBuf,
        #[command(flatten)]
        sem: SemanticsArgs,
        #[arg(long)]
        topic: String,
        #[arg(long)]
        vary: String,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Check one principle on one topic; exit 1 on a violation
    Check {
        file: PathBuf,
        #[command(flatten)]
        sem: SemanticsArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        principle: String,
        #[arg(long)]
        topic: String,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Verify corpus examples against their recorded expectations
    Reproduce {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        example: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Search random graphs for a violation; exit 1 with the first witness
    Fuzz {
        #[command(flatten)]
        sem: SemanticsArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        principle: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        max_args: usize,
        #[arg(long, default_value_t = 0.35)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0.05)]
        strength_grid: f64,
        /// Generate support edges only
        #[arg(long)]
        support_only: bool,
        /// Also write the witness graph to this file
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Write every corpus example as a graph file plus an expectations sidecar
    ExportCorpus { dir: PathBuf },
}

#[derive(Args, Debug)]
struct SemanticsArgs {
    /// qe, dfquad, sd-dfquad, eb, ebt, or custom
    #[arg(long)]
    semantics: String,
    /// Custom aggregation: sum, product or top
    #[arg(long)]
    aggregation: Option<String>,
    /// Custom influence: linear, euler or pmax
    #[arg(long)]
    influence: Option<String>,
    /// Conservativeness k of linear and pmax (default 1)
    #[arg(long)]
    k: Option<f64>,
    /// Exponent p of pmax (default 2)
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Args, Debug)]
struct MethodArgs {
    /// removal, intrinsic-removal, shapley, shapley-sampled or gradient
    #[arg(long)]
    method: String,
    /// Permutations drawn by shapley-sampled
    #[arg(long, default_value_t = 10_000)]
    permutations: u64,
    /// Seed of shapley-sampled
    #[arg(long, default_value_t = 0)]
    sampling_seed: u64,
}

#[derive(Args, Debug, Default)]
struct ToleranceArgs {
    #[arg(long)]
    zero_tol: Option<f64>,
    #[arg(long)]
    eq_tol: Option<f64>,
    /// Comma-separated, strictly decreasing probe distances
    #[arg(long, value_delimiter = ',')]
    eps_schedule: Option<Vec<f64>>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    kink_tol: Option<f64>,
}

impl SemanticsArgs {
    fn resolve(&self) -> Result<Semantics, QbagError> {
        let custom = self.semantics.eq_ignore_ascii_case("custom");
        let extras = self.aggregation.is_some() || self.influence.is_some() || self.k.is_some() || self.p.is_some();
        if !custom {
            if extras {
                return Err(QbagError::InvalidParameter(
                    "--aggregation, --influence, --k and --p require --semantics custom".into(),
                ));
            }
            return Semantics::preset(&self.semantics);
        }
        let missing = |flag: &str| QbagError::InvalidParameter(format!("--semantics custom needs --{flag}"));
        let aggregation = match self.aggregation.as_deref().ok_or_else(|| missing("aggregation"))?.to_ascii_lowercase().as_str() {
            "sum" => Aggregation::Sum,
            "product" => Aggregation::Product,
            "top" => Aggregation::Top,
            other => return Err(QbagError::InvalidParameter(format!("unknown aggregation `{other}`"))),
        };
        let k = self.k.unwrap_or(1.0);
        let influence = match self.influence.as_deref().ok_or_else(|| missing("influence"))?.to_ascii_lowercase().as_str() {
            "linear" => Influence::Linear { k },
            "euler" | "euler-based" => Influence::EulerBased,
            "pmax" | "p-max" => Influence::PMax { p: self.p.unwrap_or(2), k },
            other => return Err(QbagError::InvalidParameter(format!("unknown influence `{other}`"))),
        };
        Semantics::custom(aggregation, influence)
    }
}

impl MethodArgs {
    fn resolve(&self) -> Result<Method, QbagError> {
        Method::parse(&self.method, self.permutations, self.sampling_seed)
    }
}

impl ToleranceArgs {
    fn resolve(&self) -> Result<CheckConfig, QbagError> {
        let mut cfg = CheckConfig::default();
        if let Some(v) = self.zero_tol {
            cfg.zero_tol = v;
        }
        if let Some(v) = self.eq_tol {
            cfg.eq_tol = v;
        }
        if let Some(v) = &self.eps_schedule {
            cfg.eps_schedule = v.clone();
        }
        if let Some(v) = self.grid_points {
            cfg.grid_points = v;
        }
        if let Some(v) = self.kink_tol {
            cfg.kink_tol = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Flags that select `sem` on the command line.
pub fn semantics_flags(sem: &Semantics) -> String {
    if let Some(name) = &sem.name {
        return format!("--semantics {name}");
    }
    let agg = match sem.aggregation {
        Aggregation::Sum => "sum",
        Aggregation::Product => "product",
        Aggregation::Top => "top",
    };
    let infl = match sem.influence {
        Influence::Linear { k } => format!("linear --k {k}"),
        Influence::EulerBased => "euler".to_string(),
        Influence::PMax { p, k } => format!("pmax --k {k} --p {p}"),
    };
    format!("--semantics custom --aggregation {agg} --influence {infl}")
}

/// Flags that select `method` on the command line.
pub fn method_flags(method: Method) -> String {
    match method {
        Method::ShapleySampled { permutations, seed } => {
            format!("--method shapley-sampled --permutations {permutations} --sampling-seed {seed}")
        }
        m => format!("--method {m}"),
    }
}

/// Flags for the fields of `cfg` that differ from the defaults.
pub fn tolerance_flags(cfg: &CheckConfig) -> String {
    let d = CheckConfig::default();
    let mut out = String::new();
    if cfg.zero_tol != d.zero_tol {
        write!(out, " --zero-tol {:e}", cfg.zero_tol).unwrap();
    }
    if cfg.eq_tol != d.eq_tol {
        write!(out, " --eq-tol {:e}", cfg.eq_tol).unwrap();
    }
    if cfg.eps_schedule != d.eps_schedule {
        let list: Vec<String> = cfg.eps_schedule.iter().map(|e| format!("{e:e}")).collect();
        write!(out, " --eps-schedule {}", list.join(",")).unwrap();
    }
    if cfg.grid_points != d.grid_points {
        write!(out, " --grid-points {}", cfg.grid_points).unwrap();
    }
    if cfg.kink_tol != d.kink_tol {
        write!(out, " --kink-tol {:e}", cfg.kink_tol).unwrap();
    }
    out
}

fn load_graph(path: &Path) -> Result<Qbag, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| e.to_string())
}

/// Runs one command line (including the program name) and captures its result.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(msg) => Outcome::error(msg),
    }
}

fn dispatch(command: Command) -> Result<Outcome, String> {
    let s = |e: QbagError| e.to_string();
    match command {
        Command::Eval { file, sem } => {
            let sem = sem.resolve().map_err(s)?;
            let g = load_graph(&file)?;
            Ok(Outcome::ok(cmd_eval(&g, &sem).map_err(s)?))
        }
        Command::Contrib { file, sem, method, topic, contributor } => {
            let sem = sem.resolve().map_err(s)?;
            let method = method.resolve().map_err(s)?;
            let g = load_graph(&file)?;
            Ok(Outcome::ok(cmd_contrib(&g, &sem, method, &topic, contributor.as_deref()).map_err(s)?))
        }
        Command::Sweep { file, sem, topic, vary, steps } => {
            let sem = sem.resolve().map_err(s)?;
            let g = load_graph(&file)?;
            Ok(Outcome::ok(cmd_sweep(&g, &sem, &topic, &vary, steps).map_err(s)?))
        }
        Command::Check { file, sem, method, principle, topic, tol } => {
            let sem = sem.resolve().map_err(s)?;
            let method = method.resolve().map_err(s)?;
            let principle = PrincipleId::parse(&principle).map_err(s)?;
            let cfg = tol.resolve().map_err(s)?;
            let g = load_graph(&file)?;
            let report = check(principle, &g, &sem, method, &topic, &cfg).map_err(s)?;
            Ok(Outcome { code: i32::from(report.is_violation()), stdout: format!("{report}\n"), stderr: String::new() })
        }
        Command::Reproduce { example, all } => {
            let list: Vec<&Example> = if all {
                corpus::examples().iter().collect()
            } else {
                let id = example.expect("clap requires --example without --all");
                vec![corpus::examples().iter().find(|e| e.id == id).ok_or_else(|| s(QbagError::UnknownExample(id)))?]
            };
            Ok(cmd_reproduce(&list, all))
        }
        Command::Fuzz {
            sem,
            method,
            principle,
            seed,
            trials,
            max_args,
            edge_prob,
            strength_grid,
            support_only,
            witness_out,
            tol,
        } => {
            let sem = sem.resolve().map_err(s)?;
            let method = method.resolve().map_err(s)?;
            let principle = PrincipleId::parse(&principle).map_err(s)?;
            let cfg = tol.resolve().map_err(s)?;
            let fuzz = FuzzConfig { seed, trials, max_args, edge_prob, strength_grid, support_only };
            fuzz.validate()?;
            cmd_fuzz(&fuzz, principle, &sem, method, &cfg, witness_out.as_deref())
        }
        Command::ExportCorpus { dir } => {
            let n = export_corpus(&dir).map_err(|e| format!("cannot write {}: {e}", dir.display()))?;
            Ok(Outcome::ok(format!("wrote {n} examples to {}\n", dir.display())))
        }
    }
}

pub fn cmd_eval(g: &Qbag, sem: &Semantics) -> Result<String, QbagError> {
    let sigma = evaluate(g, sem)?;
    let mut out = String::new();
    for &i in g.order() {
        writeln!(out, "{} {:.6} {:.6}", g.name(i), g.tau(i), sigma.value(i)).unwrap();
    }
    Ok(out)
}

/// One value for a single contributor, else "id value" lines in topological order.
pub fn cmd_contrib(g: &Qbag, sem: &Semantics, method: Method, topic: &str, contributor: Option<&str>) -> Result<String, QbagError> {
    if let Some(x) = contributor {
        return Ok(format!("{}\n", contribution(g, sem, method, topic, x)?));
    }
    let column = contributions_to(g, sem, method, g.index_of(topic)?)?;
    let mut out = String::new();
    for &i in g.order() {
        writeln!(out, "{} {}", g.name(i), column[i]).unwrap();
    }
    Ok(out)
}

/// CSV with `steps` rows, ε = i / (steps - 1).
pub fn cmd_sweep(g: &Qbag, sem: &Semantics, topic: &str, vary: &str, steps: usize) -> Result<String, QbagError> {
    if steps < 2 {
        return Err(QbagError::InvalidParameter("steps must be at least 2".into()));
    }
    let a = g.index_of(topic)?;
    g.index_of(vary)?;
    let mut out = String::from("epsilon,final_strength\n");
    for i in 0..steps {
        let eps = i as f64 / (steps - 1) as f64;
        let sigma = evaluate(&g.with_initial_strength(vary, eps)?, sem)?.value(a);
        writeln!(out, "{eps:.6},{sigma:.6}").unwrap();
    }
    Ok(out)
}

fn cmd_reproduce(list: &[&Example], summary: bool) -> Outcome {
    let reports: Vec<_> = list.par_iter().map(|ex| corpus::verify(ex, None)).collect();
    let mut out = String::new();
    let mut passed = 0;
    for r in &reports {
        let n = r.results.len();
        if r.passed() {
            passed += 1;
            writeln!(out, "PASS {} ({n} expectations)", r.id).unwrap();
        } else {
            let failed: Vec<_> = r.failures().collect();
            writeln!(out, "FAIL {} ({} of {n} expectations failed)", r.id, failed.len()).unwrap();
            for f in failed {
                writeln!(out, "    {f}").unwrap();
            }
        }
    }
    if summary {
        writeln!(out, "{passed} of {} examples passed", reports.len()).unwrap();
    }
    Outcome { code: i32::from(passed != reports.len()), stdout: out, stderr: String::new() }
}

fn cmd_fuzz(
    fuzz: &FuzzConfig,
    principle: PrincipleId,
    sem: &Semantics,
    method: Method,
    cfg: &CheckConfig,
    witness_out: Option<&Path>,
) -> Result<Outcome, String> {
    let found = fuzz::search(fuzz, principle, sem, method, cfg).map_err(|(t, e)| format!("trial {t}: {e}"))?;
    let Some(w) = found else {
        return Ok(Outcome::ok(format!(
            "no violation of {principle} under {sem} with {method} in {} trials (seed {}, max-args {})\n",
            fuzz.trials, fuzz.seed, fuzz.max_args
        )));
    };
    let json = serialize_graph(&w.graph);
    let path = match witness_out {
        Some(p) => {
            fs::write(p, &json).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            p.display().to_string()
        }
        None => "witness.json".to_string(),
    };
    let mut out = String::new();
    writeln!(out, "violation of {principle} under {sem} with {method} in trial {} (seed {})", w.trial, fuzz.seed).unwrap();
    writeln!(out, "{}", w.report).unwrap();
    writeln!(out, "witness graph:").unwrap();
    out.push_str(&json);
    writeln!(
        out,
        "reproduce with:\n  qbag check {path} {} {} --principle {principle} --topic {}{}",
        semantics_flags(sem),
        method_flags(method),
        w.report.topic,
        tolerance_flags(cfg)
    )
    .unwrap();
    Ok(Outcome { code: 1, stdout: out, stderr: String::new() })
}

#[derive(Serialize)]
struct Sidecar<'a> {
    id: &'a str,
    description: &'a str,
    anchor: &'a str,
    graph: String,
    semantics: &'a Semantics,
    notes: &'a [String],
    expectations: &'a [Expectation],
}

#[derive(Serialize)]
struct IndexEntry<'a> {
    id: &'a str,
    description: &'a str,
    anchor: &'a str,
    graph: String,
    expectations: String,
}

/// Writes `<id>.json`, `<id>.expectations.json` per example and an `index.json`; returns the count.
pub fn export_corpus(dir: &Path) -> std::io::Result<usize> {
    fs::create_dir_all(dir)?;
    let mut index = Vec::new();
    for ex in corpus::examples() {
        let graph = format!("{}.json", ex.id);
        let sidecar = format!("{}.expectations.json", ex.id);
        fs::write(dir.join(&graph), serialize_graph(&ex.graph))?;
        let doc = Sidecar {
            id: &ex.id,
            description: &ex.description,
            anchor: &ex.anchor,
            graph: graph.clone(),
            semantics: &ex.semantics,
            notes: &ex.notes,
            expectations: &ex.expectations,
        };
        fs::write(dir.join(&sidecar), serde_json::to_string_pretty(&doc)? + "\n")?;
        index.push(IndexEntry { id: &ex.id, description: &ex.description, anchor: &ex.anchor, graph, expectations: sidecar });
    }
    fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index)? + "\n")?;
    Ok(index.len())
}
