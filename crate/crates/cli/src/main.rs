//! `ssig`: supersingular isogeny graph statistics from the command line.
//!
//! Exit status is 0 on success, 2 for invalid input, 3 when a checked
//! identity fails, and 1 for I/O and other internal errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ssig_core::analytics::{
    biroute_with_graphs, check_traces, edit_distance, edit_distance_bracket_holds, graph_stats,
    intersection_bound, intersection_number, BirouteMethod, BirouteReport, GraphStats,
};
use ssig_core::arith::is_prime;
use ssig_core::brandt::trace_formula;
use ssig_core::cache::GraphCache;
use ssig_core::classnum::{hurwitz, hurwitz_modified};
use ssig_core::congruence::{
    derive_congruences_all, find_first_prime, GraphProperty, PropertyKind, DEFAULT_SEARCH_CAP,
};
use ssig_core::export::{to_dot, to_dot_overlay, write_ledger, GraphExport, LedgerRow};
use ssig_core::ssgraph::{IsogenyGraph, ModularPolynomial, SUPPORTED_ELLS};
use ssig_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "ssig",
    version,
    about = "Supersingular isogeny graph statistics"
)]
struct Cli {
    /// Seed for the randomized root splitting (results do not depend on it).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Directory holding cached graphs.
    #[arg(
        long,
        global = true,
        env = "SSIG_CACHE",
        default_value = "./.ssig-cache"
    )]
    cache_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Λ_p(ℓ) and write it as JSON or DOT.
    Graph {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
        /// Overlay a second graph on the same vertices (DOT only).
        #[arg(long)]
        ell2: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Loop and multi-edge statistics of Λ_p(ℓ).
    Stats {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        json: bool,
    },
    /// Trace of the Brandt matrix B(m) from class numbers.
    Trace {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
    },
    /// Hurwitz class number H(D), or H_p(D) with --p.
    Hurwitz {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Residue classes of primes with a graph property.
    Congruence {
        #[command(flatten)]
        prop: PropertyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Smallest prime with a graph property, decided by exact traces.
    FindPrime {
        #[command(flatten)]
        prop: PropertyArgs,
        #[arg(long, default_value_t = 5)]
        start: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// R-th bi-route number of Λ_p(ℓ1) and Λ_p(ℓ2).
    Biroute {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell1: u64,
        #[arg(long)]
        ell2: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Shared edges and edit distance of Λ_p(ℓ1) and Λ_p(ℓ2).
    Intersect {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell1: u64,
        #[arg(long)]
        ell2: u64,
    },
    /// Run every invariant check on Λ_p(ℓ).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Check all primes p ≡ 1 mod 12 up to --max and write a CSV ledger.
    Sweep {
        #[arg(long)]
        max: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        ells: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PropertyArgs {
    #[arg(long, value_enum)]
    property: Property,
    /// Degree ℓ; repeat to require the property for several degrees at once.
    #[arg(long, required = true)]
    ell: Vec<u64>,
    /// Second degree for no-common-edges, or an extra degree otherwise.
    #[arg(long)]
    ell2: Option<u64>,
    /// Require p ≡ 1 mod 12 so that every graph is undirected.
    #[arg(long)]
    undirected: bool,
}

impl PropertyArgs {
    fn properties(&self) -> Result<Vec<GraphProperty>, Error> {
        let kind = self.property.kind();
        let mut ells = self.ell.clone();
        ells.extend(self.ell2);
        if kind == PropertyKind::NoCommonEdges {
            return Ok(vec![GraphProperty::new(kind, ells, self.undirected)?]);
        }
        ells.iter()
            .map(|&l| GraphProperty::single(kind, l, self.undirected))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    NoLoops,
    NoMultiEdges,
    Simple,
    NoCommonEdges,
}

impl Property {
    fn kind(self) -> PropertyKind {
        match self {
            Property::NoLoops => PropertyKind::NoLoops,
            Property::NoMultiEdges => PropertyKind::NoMultiEdges,
            Property::Simple => PropertyKind::Simple,
            Property::NoCommonEdges => PropertyKind::NoCommonEdges,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Definitional,
    Telescoped,
    Hurwitz,
    All,
}

impl From<Method> for BirouteMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Definitional => BirouteMethod::Definitional,
            Method::Telescoped => BirouteMethod::Telescoped,
            Method::Hurwitz => BirouteMethod::Hurwitz,
            Method::All => BirouteMethod::All,
        }
    }
}

struct Context {
    cache: GraphCache,
    seed: u64,
}

impl Context {
    fn graph(&self, p: u64, ell: u64) -> Result<IsogenyGraph, Error> {
        self.cache.get_or_build(p, ell, self.seed)
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_stats(s: &GraphStats) {
    println!("p = {}, ℓ = {}, n = {}", s.p, s.ell, s.n);
    println!("loops: {} (at most {})", s.loop_count, s.loop_bound());
    println!("multi-edge pairs: {}", s.multi_edge_pair_count);
    println!(
        "redundant edges: {} (at most {})",
        s.redundant_edges,
        s.redundant_bound()
    );
    for (m, sites) in &s.redundancy.edge_sites {
        println!("  {sites} vertex pair(s) joined by {m} edges");
    }
    for (m, sites) in &s.redundancy.loop_sites {
        println!("  {sites} vertex(es) with {m} loops");
    }
    println!("simple: {}", s.is_simple);
    println!("Tr B(ℓ) = {}", s.trace_l);
    println!("Tr B(ℓ²) = {}", s.trace_l2);
}

fn print_biroute(r: &BirouteReport) {
    println!("p = {}, ℓ1 = {}, ℓ2 = {}, R = {}", r.p, r.ell1, r.ell2, r.r);
    for (name, v) in [
        ("definitional", r.value_definitional),
        ("telescoped", r.value_telescoped),
        ("hurwitz", r.value_hurwitz),
    ] {
        if let Some(v) = v {
            println!("{name}: {v}");
        }
    }
    println!("bi-route number: {}", r.value());
    println!("upper bound: {}", r.upper_bound);
}

fn self_check_tables() -> Result<(), Error> {
    for ell in SUPPORTED_ELLS {
        ModularPolynomial::get(ell)?.self_check()?;
    }
    Ok(())
}

fn sweep_row(ctx: &Context, p: u64, ell: u64) -> Result<(LedgerRow, bool), Error> {
    let g = ctx.graph(p, ell)?;
    let passed = check_traces(&g).is_ok();
    let stats = graph_stats(&g);
    let ok = passed && stats.is_ok();
    let (loops, redundant) = match &stats {
        Ok(s) => (s.loop_count, s.redundant_edges),
        Err(_) => (g.loop_count(), 0),
    };
    let row = LedgerRow {
        p,
        ell,
        n: g.n() as u64,
        loops,
        redundant,
        trace_checks_passed: passed,
    };
    Ok((row, ok))
}

fn run(cli: Cli) -> Result<bool, Error> {
    self_check_tables()?;
    let ctx = Context {
        cache: GraphCache::new(&cli.cache_dir),
        seed: cli.seed,
    };
    match cli.command {
        Command::Graph {
            p,
            ell,
            ell2,
            format,
            out,
        } => {
            let g = ctx.graph(p, ell)?;
            let text = match (format, ell2) {
                (Format::Json, None) => GraphExport::from_graph(&g)?.to_json()?,
                (Format::Json, Some(_)) => {
                    return Err(Error::Domain("--ell2 overlays need --format dot".into()))
                }
                (Format::Dot, None) => to_dot(&g),
                (Format::Dot, Some(l2)) => to_dot_overlay(&g, &ctx.graph(p, l2)?)?,
            };
            emit(out.as_ref(), &text)?;
        }
        Command::Stats { p, ell, json } => {
            let stats = graph_stats(&ctx.graph(p, ell)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&stats)?);
            } else {
                print_stats(&stats);
            }
        }
        Command::Trace { p, m } => println!("{}", trace_formula(p, m)?),
        Command::Hurwitz { d, p } => match p {
            Some(p) => println!("{}", hurwitz_modified(d, p)?),
            None => println!("{}", hurwitz(d)),
        },
        Command::Congruence { prop, json } => {
            let set = derive_congruences_all(&prop.properties()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&set)?);
            } else {
                println!("modulus: {}", set.modulus);
                let list: Vec<String> = set.residues.iter().map(u64::to_string).collect();
                println!("residues: {}", list.join(", "));
                println!(
                    "valid for primes p > {} not dividing {}; use find-prime for smaller p",
                    set.valid_above, set.modulus
                );
            }
        }
        Command::FindPrime { prop, start, cap } => {
            println!("{}", find_first_prime(&prop.properties()?, start, cap)?)
        }
        Command::Biroute {
            p,
            ell1,
            ell2,
            r,
            method,
            json,
        } => {
            let report = if matches!(method, Method::Hurwitz) {
                ssig_core::analytics::biroute(p, ell1, ell2, r, method.into(), ctx.seed)?
            } else {
                biroute_with_graphs(&ctx.graph(p, ell1)?, &ctx.graph(p, ell2)?, r, method.into())?
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print_biroute(&report);
            }
        }
        Command::Intersect { p, ell1, ell2 } => {
            let g1 = ctx.graph(p, ell1)?;
            let g2 = ctx.graph(p, ell2)?;
            let common = intersection_number(&g1, &g2)?;
            let distance = edit_distance(&g1, &g2)?;
            let (lo, hi) = (ell1.min(ell2), ell1.max(ell2));
            println!(
                "intersection number: {common} (at most {})",
                intersection_bound(lo, hi)
            );
            println!("edit distance: {distance}");
            let bracket = edit_distance_bracket_holds(g1.n() as u64, ell1, ell2, distance);
            println!(
                "edit-distance bracket: {}",
                if bracket { "holds" } else { "FAILS" }
            );
            return Ok(common <= intersection_bound(lo, hi) && bracket);
        }
        Command::Verify { p, ell } => {
            let g = ctx.graph(p, ell)?;
            g.validate()?;
            println!("graph structure: ok");
            check_traces(&g)?;
            println!("trace agreement: ok");
            let stats = graph_stats(&g)?;
            println!("loop and redundancy identities and bounds: ok");
            print_stats(&stats);
        }
        Command::Sweep { max, ells, out } => {
            if let Some(&bad) = ells.iter().find(|l| !SUPPORTED_ELLS.contains(l)) {
                return Err(Error::Domain(format!("ℓ = {bad} is not one of 2, 3, 5, 7")));
            }
            let jobs: Vec<(u64, u64)> = (13..=max)
                .filter(|&p| p % 12 == 1 && is_prime(p))
                .flat_map(|p| ells.iter().map(move |&l| (p, l)))
                .collect();
            let results: Vec<(LedgerRow, bool)> = jobs
                .par_iter()
                .map(|&(p, l)| sweep_row(&ctx, p, l))
                .collect::<Result<_, _>>()?;
            let rows: Vec<LedgerRow> = results.iter().map(|(r, _)| r.clone()).collect();
            let failures = results.iter().filter(|(_, ok)| !ok).count();
            let mut buf = Vec::new();
            write_ledger(&rows, &mut buf)?;
            emit(out.as_ref(), &String::from_utf8_lossy(&buf))?;
            if failures > 0 {
                eprintln!("{failures} of {} graphs failed a check", rows.len());
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("ssig: {e}");
            if e.is_theorem_violation() {
                ExitCode::from(3)
            } else if e.is_user_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
