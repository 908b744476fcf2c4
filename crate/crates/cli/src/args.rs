use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ratiocut", version, about = "Exact densest subgraph and conductance* via incremental parametric cuts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Densest subgraph by IPC.
    Dsp(DspArgs),
    /// Minimum conductance* away from a seed set by IPC.
    ConductanceStar(ConductanceArgs),
    /// Every breakpoint of the parametric envelope, as CSV.
    Envelope(EnvelopeArgs),
    /// Charikar's greedy peeling.
    Greedy(GraphArgs),
    /// Greedy++ with a number of peeling passes.
    Greedypp(GreedyppArgs),
    /// Runs a benchmark manifest.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// SNAP-style edge list.
    pub graph: PathBuf,
    /// Read a third column as integer edge weights.
    #[arg(long)]
    pub weighted: bool,
    /// "id q" lines overriding unit node weights.
    #[arg(long, value_name = "FILE")]
    pub node_weights: Option<PathBuf>,
    /// Decimal places for printed ratios and the envelope's bisection.
    #[arg(long, default_value_t = 4)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Directory for the JSON report and CSV side files.
    #[arg(long, value_name = "DIR")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DspArgs {
    #[command(flatten)]
    pub common: GraphArgs,
    /// Original ids (one per line) of the initial incumbent instead of V.
    #[arg(long, value_name = "FILE")]
    pub start_ids: Option<PathBuf>,
    /// Write the network instantiated at λ₀ in DIMACS max-flow format.
    #[arg(long, value_name = "FILE")]
    pub dump_dimacs: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// METIS partition output: line i holds the part of the i-th smallest node id.
    #[arg(long, value_name = "FILE", conflicts_with = "seed_ids")]
    pub partition: Option<PathBuf>,
    /// Original ids of the seed nodes, one per line.
    #[arg(long, value_name = "FILE")]
    pub seed_ids: Option<PathBuf>,
    /// Restrict to one connected component: `largest` or a node id inside it.
    #[arg(long, value_name = "ID|largest")]
    pub component: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ConductanceArgs {
    #[command(flatten)]
    pub common: GraphArgs,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// Write the network instantiated at λ₀ in DIMACS max-flow format.
    #[arg(long, value_name = "FILE")]
    pub dump_dimacs: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Dsp,
    ConductanceStar,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub common: GraphArgs,
    #[arg(long, value_enum, default_value_t = Problem::Dsp)]
    pub problem: Problem,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// λ range as exact rationals or decimals, e.g. `0 3/2`.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub interval: Option<Vec<String>>,
}

#[derive(Debug, Clone, Args)]
pub struct GreedyppArgs {
    #[command(flatten)]
    pub common: GraphArgs,
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// TOML manifest.
    pub manifest: PathBuf,
    /// Report directory; defaults to `bench-out` next to the manifest.
    #[arg(long, value_name = "DIR")]
    pub output: Option<PathBuf>,
    /// Overrides the manifest's worker count.
    #[arg(long)]
    pub workers: Option<usize>,
}
