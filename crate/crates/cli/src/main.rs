//! `kgc`: approximate k-geodesic centers from the command line.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed verification,
//! 2 when an instance exceeds a brute-force cap.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kgc", version, about = "Additive approximation of k-geodesic centers")]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "KGC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the approximation and print the result as JSON.
    Solve(SolveArgs),
    /// Compute the optimum exactly by exhaustive search (small graphs only).
    Exact(ExactArgs),
    /// Four-point hyperbolicity, doubled.
    Delta(DeltaArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Check a cover or packing against a graph.
    Verify(VerifyArgs),
    /// Time the solver over a family of graphs and print CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    k: usize,
    /// `auto` (shallowest), `threshold` (first apex at 2τ̂+½) or a doubled depth.
    #[arg(long, default_value = "auto")]
    gamma: String,
    /// Use this doubled thinness bound instead of computing 4δ.
    #[arg(long, conflicts_with = "no_tau")]
    tau_doubled: Option<u64>,
    /// Skip the thinness bound; the result carries no bounds.
    #[arg(long)]
    no_tau: bool,
    /// Largest graph for which δ is computed.
    #[arg(long, default_value_t = kgc_core::DEFAULT_DELTA_VERTEX_CAP)]
    delta_cap: usize,
    /// Return the best k paths of the rooted cover if they do better.
    #[arg(long)]
    best_effort: bool,
    /// Scan every radius for every root and warn about non-monotone runs.
    #[arg(long)]
    check_monotonicity: bool,
    #[arg(long)]
    no_prune: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    k: usize,
    #[arg(long, default_value_t = 200_000)]
    max_paths: usize,
    #[arg(long, default_value_t = 100_000_000)]
    max_combinations: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(long, default_value_t = kgc_core::DEFAULT_DELTA_VERTEX_CAP)]
    delta_cap: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GenType {
    Path,
    Cycle,
    Star,
    Grid,
    Tree,
    Random,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: GenType,
    /// Vertex count (leaf count for a star).
    #[arg(short, long)]
    n: Option<usize>,
    /// Edge count for `random`.
    #[arg(short, long)]
    m: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace every edge by a path of this length.
    #[arg(long)]
    subdivide: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("certificate").required(true).args(["cover", "packing"])))]
struct VerifyArgs {
    #[arg(short, long)]
    graph: PathBuf,
    /// A JSON list of paths, or an object holding one under "paths" or "cover".
    #[arg(long)]
    cover: Option<PathBuf>,
    /// A JSON vertex list, a packing witness, or solver output carrying one.
    #[arg(long)]
    packing: Option<PathBuf>,
    /// Radius to verify at; defaults to the one recorded in the file.
    #[arg(long)]
    radius: Option<u32>,
    /// Root of the packing; defaults to the one recorded in the file.
    #[arg(long)]
    root: Option<usize>,
    /// Also require at most k paths, or exactly 2k packing vertices.
    #[arg(short, long)]
    k: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BenchFamily {
    Path,
    Ladder,
    Grid,
    Tree,
    Random,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "ladder")]
    family: BenchFamily,
    /// Comma-separated vertex counts (approximate for grids).
    #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
    sizes: Vec<usize>,
    #[arg(short, long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timed runs per size; the median is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = kgc_core::DEFAULT_DELTA_VERTEX_CAP)]
    delta_cap: usize,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Exact(args) => commands::exact(args),
        Command::Delta(args) => commands::delta(args),
        Command::Gen(args) => commands::gen(args),
        Command::Verify(args) => commands::verify(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let capped = e
                .downcast_ref::<kgc_core::Error>()
                .is_some_and(kgc_core::Error::is_cap_exceeded);
            ExitCode::from(if capped { 2 } else { 1 })
        }
    }
}
