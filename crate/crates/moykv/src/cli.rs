//! Command-line front end.
//!
//! ```text
//! moykv eval <moy|kauffman|kv|rn|rtilde> --N <int> [--json] <file>
//! moykv verify <jaeger|composition|reverse|component-reverse|so6|skein-consistency>
//!              [--N list] [--M int] [--json] <path>
//! moykv corpus <dir> [--strict] [--report out.json]
//! ```
//!
//! Exit codes: 0 success, 1 syntax or validation error, 2 precondition or
//! internal error, 3 node budget exceeded, 4 a check failed under `--strict`
//! (and for `verify`, whenever a check fails).
//!
//! `MOYKV_THREADS` sets the worker count.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::composition::composition_rhs;
use crate::diagram::{parse_diagram, parse_diagrams, DiagramKind, GenKind, Generator, SliceDiagram};
use crate::error::{MoyError, Result};
use crate::kauffman::{KauffmanEngine, DEFAULT_NODE_BUDGET};
use crate::jaeger::jaeger_rhs_with;
use crate::laurent::HalfLaurent;
use crate::moy_bracket::{r_n_with, renormalized_bracket_with, MoyEngine};
use crate::transforms::{
    component_reversal_sides, graph_shadow, reverse_circuit, simple_circuits, two_color,
};

/// Exit code for a failed check.
pub const EXIT_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "moykv", version, about = "Exact MOY, Kauffman and Kauffman–Vogel polynomials")]
pub struct Cli {
    /// Bound on the number of diagrams visited by a Kauffman skein recursion.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub max_nodes: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one invariant of one diagram.
    Eval(EvalArgs),
    /// Verify an identity on a diagram file or a directory of `.moy` files.
    Verify(VerifyArgs),
    /// Run every applicable identity over a directory and write a JSON report.
    Corpus(CorpusArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// `⟨D⟩_N` of a (knotted) MOY graph or colored link.
    Moy,
    /// Kauffman polynomial `P_N` of an unoriented link.
    Kauffman,
    /// Kauffman–Vogel polynomial `P_N` of a rigid-vertex graph.
    Kv,
    /// `R_N` of an uncolored oriented link or widened 4-valent graph.
    Rn,
    /// `R̃_N` of a link colored by `N/2` (`--N` is the even index).
    Rtilde,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub invariant: Invariant,
    #[arg(long = "N")]
    pub n: u32,
    /// Also print the JSON term list `[[coefficient, doubledExponent], …]`.
    #[arg(long)]
    pub json: bool,
    pub file: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Jaeger,
    Composition,
    Reverse,
    ComponentReverse,
    So6,
    SkeinConsistency,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Jaeger,
        CheckKind::Composition,
        CheckKind::Reverse,
        CheckKind::ComponentReverse,
        CheckKind::So6,
        CheckKind::SkeinConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Jaeger => "jaeger",
            CheckKind::Composition => "composition",
            CheckKind::Reverse => "reverse",
            CheckKind::ComponentReverse => "component-reverse",
            CheckKind::So6 => "so6",
            CheckKind::SkeinConsistency => "skein-consistency",
        }
    }

    fn default_ns(self) -> Vec<u32> {
        match self {
            CheckKind::Jaeger => vec![1, 2, 3],
            CheckKind::Composition => vec![1, 2, 3],
            _ => vec![2, 3, 4],
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub check: CheckKind,
    /// Comma-separated list of N values.
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Vec<u32>,
    /// M for the composition product.
    #[arg(long = "M")]
    pub m: Option<u32>,
    /// Print the JSON report instead of one line per case.
    #[arg(long)]
    pub json: bool,
    /// Record wall-clock time per case (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
    pub path: PathBuf,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    pub dir: PathBuf,
    /// Exit with status 4 unless every case passes.
    #[arg(long)]
    pub strict: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Record wall-clock time per case (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One check on one diagram.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    pub file: String,
    pub diagram: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<HalfLaurent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<HalfLaurent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exit_code: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

impl Report {
    fn error(check: &str, file: &str, diagram: &str, params: BTreeMap<String, serde_json::Value>, e: &MoyError) -> Self {
        Report {
            check: check.into(),
            file: file.into(),
            diagram: diagram.into(),
            params,
            status: Status::Error,
            lhs: None,
            rhs: None,
            error: Some(e.to_string()),
            exit_code: Some(e.exit_code()),
            wall_ms: None,
        }
    }

    fn line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let mut s = format!("{status} {} {}:{} [{}]", self.check, self.file, self.diagram, params.join(" "));
        if let Some(e) = &self.error {
            s.push_str(&format!(" — {e}"));
        } else if self.status == Status::Fail {
            if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
                s.push_str(&format!(" — lhs {l} ≠ rhs {r}"));
            }
        }
        s
    }
}

/// A single identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// `P_{2N}(D) = Jaeger sum at 2N`.
    Jaeger { n: u32 },
    /// `⟨Γ⟩_{M+N} = composition product`.
    Composition { m: u32, n: u32 },
    /// `⟨Γ′⟩_N` against `⟨Γ⟩_N` for one simple circuit, up to the monomial for
    /// knotted graphs.
    Reverse { n: u32, circuit: usize },
    /// Component reversal of a colored link.
    ComponentReverse { n: u32, component: usize },
    /// `⟨Γ⟩_4 = P_6(G(Γ))` for a mostly 2-colored graph.
    So6Graph,
    /// `R̃_4(L^{(2)}_ρ) = (−1)^m P_6(mirror L)`.
    So6Link { rho: Vec<bool> },
    /// `⟨x₊⟩ − ⟨x₋⟩ = (q − q⁻¹)⟨smoothing⟩` at one crossing.
    MoyCrossingDifference { n: u32, slice: usize },
    /// `⟨vertex⟩ = ⟨x₊⟩ + q⁻¹⟨smoothing⟩` (`positive`) or `⟨x₋⟩ + q⟨smoothing⟩`.
    MoyVertex { n: u32, slice: usize, positive: bool },
    /// `P(xo) − P(xu) = (q − q⁻¹)(P(V) − P(H))` at one crossing.
    KauffmanSkein { n: u32, slice: usize },
}

impl Check {
    pub fn kind(&self) -> CheckKind {
        match self {
            Check::Jaeger { .. } => CheckKind::Jaeger,
            Check::Composition { .. } => CheckKind::Composition,
            Check::Reverse { .. } => CheckKind::Reverse,
            Check::ComponentReverse { .. } => CheckKind::ComponentReverse,
            Check::So6Graph | Check::So6Link { .. } => CheckKind::So6,
            Check::MoyCrossingDifference { .. } | Check::MoyVertex { .. } | Check::KauffmanSkein { .. } => {
                CheckKind::SkeinConsistency
            }
        }
    }

    pub fn params(&self) -> BTreeMap<String, serde_json::Value> {
        use serde_json::json;
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: serde_json::Value| {
            p.insert(k.to_string(), v);
        };
        match self {
            Check::Jaeger { n } => {
                put("N", json!(n));
                put("index", json!(2 * n));
            }
            Check::Composition { m, n } => {
                put("M", json!(m));
                put("N", json!(n));
            }
            Check::Reverse { n, circuit } => {
                put("N", json!(n));
                put("circuit", json!(circuit));
            }
            Check::ComponentReverse { n, component } => {
                put("N", json!(n));
                put("component", json!(component));
            }
            Check::So6Graph => put("relation", json!("shadow")),
            Check::So6Link { rho } => {
                put("relation", json!("link"));
                put("flip", json!(rho));
            }
            Check::MoyCrossingDifference { n, slice } => {
                put("N", json!(n));
                put("slice", json!(slice));
                put("relation", json!("crossing-difference"));
            }
            Check::MoyVertex { n, slice, positive } => {
                put("N", json!(n));
                put("slice", json!(slice));
                put("relation", json!(if *positive { "vertex+" } else { "vertex-" }));
            }
            Check::KauffmanSkein { n, slice } => {
                put("N", json!(n));
                put("slice", json!(slice));
                put("relation", json!("kauffman-skein"));
            }
        }
        p
    }
}

/// Parameters shared by a run of checks.
#[derive(Clone, Debug)]
pub struct Settings {
    /// Explicit N values; empty means the per-check default.
    pub ns: Vec<u32>,
    pub m: Option<u32>,
    pub max_nodes: u64,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            ns: Vec::new(),
            m: None,
            max_nodes: DEFAULT_NODE_BUDGET,
            timings: false,
        }
    }
}

fn has_vertex4(d: &SliceDiagram) -> bool {
    d.slices().iter().any(|g| g.kind == GenKind::V4)
}

fn is_planar(d: &SliceDiagram) -> bool {
    d.num_crossings() == 0 && !has_vertex4(d)
}

/// Expands a check kind into the instances that apply to `d`. Inapplicable
/// diagrams give an empty list.
pub fn plan(kind: CheckKind, d: &SliceDiagram, s: &Settings) -> Result<Vec<Check>> {
    let ns = if s.ns.is_empty() { kind.default_ns() } else { s.ns.clone() };
    let mut out = Vec::new();
    match kind {
        CheckKind::Jaeger => {
            if d.kind == DiagramKind::Unoriented {
                out.extend(ns.iter().map(|&n| Check::Jaeger { n }));
            }
        }
        CheckKind::Composition => {
            if d.kind == DiagramKind::Moy && is_planar(d) {
                let pairs: Vec<(u32, u32)> = match (s.m, s.ns.is_empty()) {
                    (Some(m), _) => ns.iter().map(|&n| (m, n)).collect(),
                    (None, true) => vec![(1, 1), (1, 2), (1, 3), (2, 2)],
                    (None, false) => ns.iter().map(|&n| (1, n)).collect(),
                };
                out.extend(pairs.into_iter().map(|(m, n)| Check::Composition { m, n }));
            }
        }
        CheckKind::Reverse => {
            if d.kind == DiagramKind::Moy && !has_vertex4(d) {
                let circuits = simple_circuits(d)?.len();
                for &n in ns.iter().filter(|&&n| n >= d.max_color()) {
                    out.extend((0..circuits).map(|circuit| Check::Reverse { n, circuit }));
                }
            }
        }
        CheckKind::ComponentReverse => {
            if d.kind == DiagramKind::Link {
                let comps = d.link_components()?.1.len();
                for &n in ns.iter().filter(|&&n| n >= d.max_color()) {
                    out.extend((0..comps).map(|component| Check::ComponentReverse { n, component }));
                }
            }
        }
        CheckKind::So6 => match d.kind {
            DiagramKind::Unoriented if !has_vertex4(d) => {
                let k = d.topology().components(d)?.len();
                if k > 16 {
                    return Err(MoyError::Precondition(format!("{k} components is too many orientations")));
                }
                for bits in 0u32..(1 << k) {
                    let rho = (0..k).map(|i| bits >> i & 1 == 1).collect();
                    out.push(Check::So6Link { rho });
                }
            }
            DiagramKind::Moy if is_planar(d) => match graph_shadow(d) {
                Ok(_) => out.push(Check::So6Graph),
                Err(MoyError::Precondition(_)) => {}
                Err(e) => return Err(e),
            },
            _ => {}
        },
        CheckKind::SkeinConsistency => {
            for (slice, g) in d.slices().iter().enumerate() {
                if !g.kind.is_crossing() {
                    continue;
                }
                if d.kind == DiagramKind::Unoriented {
                    out.extend(ns.iter().map(|&n| Check::KauffmanSkein { n, slice }));
                    continue;
                }
                let lv = d.level(slice);
                let (a, b) = (&lv[g.pos], &lv[g.pos + 1]);
                if a.color != 1 || b.color != 1 || a.up != b.up {
                    continue;
                }
                for &n in &ns {
                    out.push(Check::MoyCrossingDifference { n, slice });
                    if a.up == Some(true) {
                        out.push(Check::MoyVertex { n, slice, positive: true });
                        out.push(Check::MoyVertex { n, slice, positive: false });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The crossing at `slice` made positive (`true`) or negative.
fn with_crossing(d: &SliceDiagram, slice: usize, over: bool) -> Result<SliceDiagram> {
    let p = d.slices()[slice].pos;
    let g = if over { Generator::xo(p) } else { Generator::xu(p) };
    d.splice(slice, &[g], d.kind)
}

/// Computes both sides of a check.
pub fn evaluate(check: &Check, d: &SliceDiagram, engine: &MoyEngine, s: &Settings) -> Result<(HalfLaurent, HalfLaurent)> {
    let kauffman = |n: u32| KauffmanEngine::with_budget(n, s.max_nodes);
    match check {
        Check::Jaeger { n } => {
            let lhs = kauffman(2 * n)?.kv(d)?;
            let rhs = jaeger_rhs_with(engine, d, 2 * n)?;
            Ok((lhs, rhs))
        }
        Check::Composition { m, n } => Ok((engine.planar(d, m + n)?, composition_rhs(d, *m, *n)?)),
        Check::Reverse { n, circuit } => {
            let c = simple_circuits(d)?
                .into_iter()
                .nth(*circuit)
                .ok_or_else(|| MoyError::Precondition(format!("no circuit {circuit}")))?;
            let before = engine.knotted(d, *n)?;
            let after = engine.knotted(&reverse_circuit(d, &c, *n)?, *n)?;
            if d.num_crossings() == 0 {
                return Ok((after, before));
            }
            Ok(match after.monomial_ratio(&before)? {
                Some((sign, e)) => {
                    let rhs = HalfLaurent::monomial(sign, e) * before;
                    (after, rhs)
                }
                None => (after, before),
            })
        }
        Check::ComponentReverse { n, component } => component_reversal_sides(engine, d, *component, *n),
        Check::So6Graph => Ok((engine.planar(d, 4)?, kauffman(6)?.kv(&graph_shadow(d)?)?)),
        Check::So6Link { rho } => {
            let lhs = renormalized_bracket_with(engine, &two_color(d, rho)?, 4)?;
            let p = kauffman(6)?.link(&d.mirror())?;
            Ok((lhs, if d.num_crossings().is_multiple_of(2) { p } else { -p }))
        }
        Check::MoyCrossingDifference { n, slice } => {
            let pos = engine.knotted(&with_crossing(d, *slice, true)?, *n)?;
            let neg = engine.knotted(&with_crossing(d, *slice, false)?, *n)?;
            let smooth = engine.knotted(&d.splice(*slice, &[], d.kind)?, *n)?;
            Ok((pos - neg, HalfLaurent::z() * smooth))
        }
        Check::MoyVertex { n, slice, positive } => {
            let p = d.slices()[*slice].pos;
            let vertex = d.splice(*slice, &[Generator::mrg(p), Generator::spl(p, 1, 1)], d.kind)?;
            let lhs = engine.knotted(&vertex, *n)?;
            let cross = engine.knotted(&with_crossing(d, *slice, *positive)?, *n)?;
            let smooth = engine.knotted(&d.splice(*slice, &[], d.kind)?, *n)?;
            let shift = if *positive { -2 } else { 2 };
            Ok((lhs, cross + smooth.shift(shift)))
        }
        Check::KauffmanSkein { n, slice } => {
            let k = kauffman(*n)?;
            let p = d.slices()[*slice].pos;
            let over = k.kv(&with_crossing(d, *slice, true)?)?;
            let under = k.kv(&with_crossing(d, *slice, false)?)?;
            let v = k.kv(&d.splice(*slice, &[], d.kind)?)?;
            let h = k.kv(&d.splice(*slice, &[Generator::cap(p), Generator::cup(p, 1, None)], d.kind)?)?;
            Ok((over - under, HalfLaurent::z() * (v - h)))
        }
    }
}

fn run_check(check: &Check, file: &str, d: &SliceDiagram, engine: &MoyEngine, s: &Settings) -> Report {
    let start = Instant::now();
    let mut r = match evaluate(check, d, engine, s) {
        Ok((lhs, rhs)) => Report {
            check: check.kind().name().into(),
            file: file.into(),
            diagram: d.name.clone(),
            params: check.params(),
            status: if lhs == rhs { Status::Pass } else { Status::Fail },
            lhs: Some(lhs),
            rhs: Some(rhs),
            error: None,
            exit_code: None,
            wall_ms: None,
        },
        Err(e) => Report::error(check.kind().name(), file, &d.name, check.params(), &e),
    };
    if s.timings {
        r.wall_ms = Some(start.elapsed().as_millis());
    }
    r
}

/// `.moy` files of a directory sorted by name, or the single file given.
pub fn input_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let entries = fs::read_dir(path)
            .map_err(|e| MoyError::Precondition(format!("cannot read {}: {e}", path.display())))?;
        let mut files: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "moy"))
            .collect();
        files.sort();
        Ok(files)
    } else if path.is_file() {
        Ok(vec![path.to_path_buf()])
    } else {
        Err(MoyError::Precondition(format!("{} does not exist", path.display())))
    }
}

fn display_name(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned())
}

/// Runs the given check kinds over every diagram of every file. Reports are
/// ordered by file, diagram, check kind and instance regardless of scheduling.
pub fn run_checks(files: &[PathBuf], kinds: &[CheckKind], s: &Settings) -> Vec<Report> {
    enum Job {
        Done(Report),
        Run { check: Check, file: String, diagram: usize },
    }
    let mut diagrams: Vec<SliceDiagram> = Vec::new();
    let mut jobs = Vec::new();
    for path in files {
        let file = display_name(path);
        let parsed = fs::read_to_string(path)
            .map_err(|e| MoyError::Precondition(format!("cannot read {}: {e}", path.display())))
            .and_then(|text| parse_diagrams(&text));
        let ds = match parsed {
            Ok(ds) => ds,
            Err(e) => {
                jobs.push(Job::Done(Report::error("parse", &file, "", BTreeMap::new(), &e)));
                continue;
            }
        };
        for d in ds {
            for &kind in kinds {
                match plan(kind, &d, s) {
                    Ok(checks) => jobs.extend(checks.into_iter().map(|check| Job::Run {
                        check,
                        file: file.clone(),
                        diagram: diagrams.len(),
                    })),
                    Err(e) => jobs.push(Job::Done(Report::error(kind.name(), &file, &d.name, BTreeMap::new(), &e))),
                }
            }
            diagrams.push(d);
        }
    }
    let engine = MoyEngine::new();
    jobs.into_par_iter()
        .map(|job| match job {
            Job::Done(r) => r,
            Job::Run { check, file, diagram } => run_check(&check, &file, &diagrams[diagram], &engine, s),
        })
        .collect()
}

/// Pretty JSON of a report list, with a trailing newline.
pub fn reports_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "reports": reports })).expect("reports serialize");
    s.push('\n');
    s
}

fn eval(args: &EvalArgs, max_nodes: u64) -> Result<HalfLaurent> {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| MoyError::Precondition(format!("cannot read {}: {e}", args.file.display())))?;
    let d = parse_diagram(&text)?;
    let engine = MoyEngine::new();
    match args.invariant {
        Invariant::Moy => engine.knotted(&d, args.n),
        Invariant::Kauffman => KauffmanEngine::with_budget(args.n, max_nodes)?.link(&d),
        Invariant::Kv => KauffmanEngine::with_budget(args.n, max_nodes)?.kv(&d),
        Invariant::Rn => r_n_with(&engine, &d, args.n),
        Invariant::Rtilde => renormalized_bracket_with(&engine, &d, args.n),
    }
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MOYKV_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("MOYKV_THREADS must be a number, got {v:?}"))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| e.to_string())
}

/// Exit code of a finished batch: the first error's code, else 4 if anything
/// failed and `fail_counts`, else 0.
fn batch_exit(reports: &[Report], fail_counts: bool) -> i32 {
    if let Some(code) = reports.iter().find_map(|r| r.exit_code) {
        return code;
    }
    if fail_counts && reports.iter().any(|r| r.status != Status::Pass) {
        return EXIT_FAILED;
    }
    0
}

fn execute(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> std::io::Result<i32> {
    match cli.command {
        Command::Eval(args) => match eval(&args, cli.max_nodes) {
            Ok(p) => {
                writeln!(out, "{p}")?;
                if args.json {
                    writeln!(out, "{}", p.to_json())?;
                }
                Ok(0)
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(e.exit_code())
            }
        },
        Command::Verify(args) => {
            let files = match input_files(&args.path) {
                Ok(f) => f,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(e.exit_code());
                }
            };
            let s = Settings {
                ns: args.n,
                m: args.m,
                max_nodes: cli.max_nodes,
                timings: args.timings,
            };
            let reports = run_checks(&files, &[args.check], &s);
            if args.json {
                write!(out, "{}", reports_json(&reports))?;
            } else {
                for r in &reports {
                    writeln!(out, "{}", r.line())?;
                }
                let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
                writeln!(out, "{pass}/{} passed", reports.len())?;
            }
            Ok(batch_exit(&reports, true))
        }
        Command::Corpus(args) => {
            if !args.dir.is_dir() {
                writeln!(err, "error: {} is not a directory", args.dir.display())?;
                return Ok(2);
            }
            let files = match input_files(&args.dir) {
                Ok(f) => f,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(e.exit_code());
                }
            };
            let s = Settings {
                max_nodes: cli.max_nodes,
                timings: args.timings,
                ..Settings::default()
            };
            let reports = run_checks(&files, &CheckKind::ALL, &s);
            let json = reports_json(&reports);
            match &args.report {
                Some(path) => {
                    if let Err(e) = fs::write(path, &json) {
                        writeln!(err, "error: cannot write {}: {e}", path.display())?;
                        return Ok(2);
                    }
                }
                None => write!(out, "{json}")?,
            }
            let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
            writeln!(err, "{pass}/{} passed", reports.len())?;
            Ok(if args.strict && pass != reports.len() { EXIT_FAILED } else { 0 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    pool.install(|| execute(cli, out, err)).unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        2
    })
}
