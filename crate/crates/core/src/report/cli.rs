//! `hopfpres compute | verify | bounds`.
//!
//! Exit codes: 0 success or full match, 1 mismatch or bound violation,
//! 2 usage, IO or engine error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::Partition;
use crate::decompose::{engine_version, format_entries, verify_bounds, Decomposition, Engine};
use crate::hopf::HopfKind;
use crate::presentations::{Functor, FunctorSpec, Parity};
use crate::tensorspace::Convention;

use super::cache::DiskCache;
use super::tables::{Expected, TableFile};

#[derive(Parser, Debug)]
#[command(name = "hopfpres", version, about = "Exact decompositions of rank 1-3 hairy graph homology quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose one graded piece into GL irreducibles.
    Compute(ComputeArgs),
    /// Recompute table entries and diff them against an expected-table file.
    Verify(VerifyArgs),
    /// Compare computed multiplicities with the closed-form bounds.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FunctorArg {
    #[value(name = "H")]
    H,
    #[value(name = "Omega")]
    Omega,
}

impl From<FunctorArg> for Functor {
    fn from(f: FunctorArg) -> Self {
        match f {
            FunctorArg::H => Functor::HH,
            FunctorArg::Omega => Functor::Omega,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HopfArg {
    Sym,
    Tensor,
}

impl From<HopfArg> for HopfKind {
    fn from(h: HopfArg) -> Self {
        match h {
            HopfArg::Sym => HopfKind::Sym,
            HopfArg::Tensor => HopfKind::Tensor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    RightAction,
    LeftComposition,
}

#[derive(Args, Debug)]
pub struct EngineArgs {
    /// Directory for per-weight cached results.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// How written operator words are read.
    #[arg(long, value_enum, default_value = "right-action")]
    pub convention: ConventionArg,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub functor: FunctorArg,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub rank: u8,
    #[arg(long, value_enum)]
    pub hopf: HopfArg,
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Expected-table JSON file.
    #[arg(long)]
    pub against: PathBuf,
    #[arg(long)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 0)]
    pub min_degree: u32,
    #[arg(long, value_enum)]
    pub functor: Option<FunctorArg>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub rank: Option<u8>,
    #[arg(long, value_enum)]
    pub hopf: Option<HopfArg>,
    /// Skip "?" cells instead of computing them.
    #[arg(long)]
    pub skip_unknown: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub functor: FunctorArg,
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub rank: u8,
    #[arg(long)]
    pub degree: u32,
    #[arg(long, value_enum, default_value = "sym")]
    pub hopf: HopfArg,
    #[command(flatten)]
    pub engine: EngineArgs,
}

fn build_engine(args: &EngineArgs) -> Result<Engine, String> {
    let convention = match args.convention {
        ConventionArg::RightAction => Convention::RightAction,
        ConventionArg::LeftComposition => Convention::LeftComposition,
    };
    let mut engine = Engine::new(convention).with_jobs(args.jobs);
    if let Some(dir) = &args.cache_dir {
        let cache = DiskCache::open(dir).map_err(|e| format!("cache dir {}: {e}", dir.display()))?;
        engine = engine.with_cache(Arc::new(cache));
    }
    Ok(engine)
}

#[derive(Serialize)]
struct DecompEntry {
    partition: Partition,
    mult: u64,
}

fn entry_list(entries: &BTreeMap<Partition, u64>) -> Vec<DecompEntry> {
    entries
        .iter()
        .map(|(p, m)| DecompEntry {
            partition: p.clone(),
            mult: *m,
        })
        .collect()
}

#[derive(Serialize)]
struct ComputeOutput {
    functor: Functor,
    rank: u8,
    hopf: HopfKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<Parity>,
    degree: u32,
    decomposition: Vec<DecompEntry>,
    total_dims: BTreeMap<usize, u64>,
    engine_version: String,
}

fn compute_output(dec: &Decomposition) -> ComputeOutput {
    ComputeOutput {
        functor: dec.spec.functor,
        rank: dec.spec.rank,
        hopf: dec.spec.hopf,
        parity: dec.spec.parity,
        degree: dec.degree,
        decomposition: entry_list(&dec.entries),
        total_dims: dec.total_dims.clone(),
        engine_version: engine_version(),
    }
}

#[derive(Serialize)]
struct Diff {
    partition: Partition,
    expected: u64,
    computed: u64,
}

#[derive(Serialize)]
struct VerifyRow {
    caption: String,
    functor: Functor,
    rank: u8,
    hopf: HopfKind,
    degree: u32,
    status: &'static str,
    expected: String,
    computed: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    diff: Vec<Diff>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    flags: Vec<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    results: Vec<VerifyRow>,
    matched: usize,
    mismatched: usize,
    new: usize,
    engine_version: String,
}

fn diff(expected: &BTreeMap<Partition, u64>, computed: &BTreeMap<Partition, u64>) -> Vec<Diff> {
    let mut keys: Vec<&Partition> = expected.keys().chain(computed.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|p| {
            let e = expected.get(p).copied().unwrap_or(0);
            let c = computed.get(p).copied().unwrap_or(0);
            (e != c).then(|| Diff {
                partition: p.clone(),
                expected: e,
                computed: c,
            })
        })
        .collect()
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| e.to_string())?;
    writeln!(out).map_err(|e| e.to_string())
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32, String> {
    let parity = args.parity.map(|p| match p {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    });
    let spec = FunctorSpec::new(args.functor.into(), args.rank, args.hopf.into(), parity)
        .map_err(|e| e.to_string())?;
    let engine = build_engine(&args.engine)?;
    let dec = engine.decompose(&spec, args.degree).map_err(|e| e.to_string())?;
    print_json(&compute_output(&dec))?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, String> {
    let table = TableFile::load(&args.against).map_err(|e| e.to_string())?;
    let entries = table.entries().map_err(|e| e.to_string())?;
    let engine = build_engine(&args.engine)?;
    let mut report = VerifyReport {
        results: Vec::new(),
        matched: 0,
        mismatched: 0,
        new: 0,
        engine_version: engine_version(),
    };
    for entry in entries {
        let spec = entry.spec;
        if entry.degree < args.min_degree
            || entry.degree > args.max_degree
            || args.functor.is_some_and(|f| Functor::from(f) != spec.functor)
            || args.rank.is_some_and(|r| r != spec.rank)
            || args.hopf.is_some_and(|h| HopfKind::from(h) != spec.hopf)
            || (args.skip_unknown && entry.expected == Expected::Unknown)
        {
            continue;
        }
        let dec = engine.decompose(&spec, entry.degree).map_err(|e| e.to_string())?;
        let mut flags = Vec::new();
        if let Expected::Decomposition { duplicates, .. } = &entry.expected {
            for p in duplicates {
                flags.push(format!(
                    "{p} listed more than once; computed multiplicity {}",
                    dec.mult(p)
                ));
            }
        }
        let (status, d) = match entry.expected.entries() {
            None => {
                report.new += 1;
                ("NEW", Vec::new())
            }
            Some(expected) => {
                let d = diff(&expected, &dec.entries);
                if d.is_empty() {
                    report.matched += 1;
                    ("MATCH", d)
                } else {
                    report.mismatched += 1;
                    ("MISMATCH", d)
                }
            }
        };
        report.results.push(VerifyRow {
            caption: entry.caption,
            functor: spec.functor,
            rank: spec.rank,
            hopf: spec.hopf,
            degree: entry.degree,
            status,
            expected: entry.raw,
            computed: format_entries(&dec.entries),
            diff: d,
            flags,
        });
    }
    print_json(&report)?;
    Ok(if report.mismatched == 0 { 0 } else { 1 })
}

fn cmd_bounds(args: &BoundsArgs) -> Result<i32, String> {
    let spec = FunctorSpec::new(args.functor.into(), args.rank, args.hopf.into(), None)
        .map_err(|e| e.to_string())?;
    let engine = build_engine(&args.engine)?;
    let dec = engine.decompose(&spec, args.degree).map_err(|e| e.to_string())?;
    let report = verify_bounds(&dec).map_err(|e| e.to_string())?;
    print_json(&report)?;
    Ok(if report.violations() == 0 { 0 } else { 1 })
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("hopfpres: {msg}");
            2
        }
    }
}
