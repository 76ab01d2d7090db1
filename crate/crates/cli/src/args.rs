use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "local-derand", version, about = "Deterministic LOCAL-model graph algorithms with checked invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Seed of randomized generators.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm and write a JSON report.
    Run(RunArgs),
    /// Sweep graph sizes and write a CSV of rounds, quality and wall time.
    Bench(BenchArgs),
    /// Run an exact reference on a small graph.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Gnp,
    Path,
    Cycle,
    Grid,
    Tree,
    Regular,
    DisjointEdges,
    Complete,
    Star,
    Edgeless,
}

impl GenKind {
    pub fn randomized(self) -> bool {
        matches!(self, GenKind::Gnp | GenKind::Tree | GenKind::Regular)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Generator family.
    #[arg(long = "gen", value_enum)]
    pub kind: GenKind,
    /// Number of nodes (edges for disjoint-edges, leaves for star).
    #[arg(long)]
    pub n: Option<u64>,
    /// Edge probability for gnp.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub rows: Option<u64>,
    #[arg(long)]
    pub cols: Option<u64>,
    /// Degree for regular.
    #[arg(long)]
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, Args)]
#[group(skip)]
pub struct SourceArgs {
    /// Edge-list file (`u v` per line).
    #[arg(long, required_unless_present = "kind", conflicts_with = "kind")]
    pub graph: Option<PathBuf>,
    /// Generator family, with its parameters given by the flags below.
    #[arg(long = "gen", value_enum)]
    pub kind: Option<GenKind>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub rows: Option<u64>,
    #[arg(long)]
    pub cols: Option<u64>,
    #[arg(long)]
    pub degree: Option<u64>,
}

impl SourceArgs {
    pub fn gen(&self) -> Option<GenArgs> {
        self.kind.map(|kind| GenArgs { kind, n: self.n, p: self.p, rows: self.rows, cols: self.cols, degree: self.degree })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Mis,
    Matching,
    ClusterAll,
    ClusterConstant,
    Mpx,
    LubyRand,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Mis => "mis",
            Algo::Matching => "matching",
            Algo::ClusterAll => "cluster-all",
            Algo::ClusterConstant => "cluster-constant",
            Algo::Mpx => "mpx",
            Algo::LubyRand => "luby-rand",
        }
    }

    /// Whether the algorithm draws from the seed stream.
    pub fn randomized(self) -> bool {
        matches!(self, Algo::Mis | Algo::Matching | Algo::Mpx | Algo::LubyRand)
    }

    pub fn baseline(self) -> Option<Algo> {
        match self {
            Algo::Mis => Some(Algo::LubyRand),
            Algo::ClusterAll | Algo::ClusterConstant => Some(Algo::Mpx),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FinisherArg {
    Greedy,
    Doubling,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest graph the exact matching oracle accepts.
    #[arg(long = "budget-nodes")]
    pub nodes: Option<usize>,
    /// Largest number of label tuples the rounding oracle enumerates.
    #[arg(long = "budget-tuples")]
    pub tuples: Option<u64>,
    /// Largest V-side the hitting-set oracle enumerates.
    #[arg(long = "budget-subset")]
    pub subset: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long)]
    pub alpha: Option<u64>,
    #[arg(long = "f-override")]
    pub f_override: Option<f64>,
    /// Master seed; required for randomized generators and algorithms.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "greedy")]
    pub finisher: FinisherArg,
    /// Compute the exact maximum matching with the oracle and check the
    /// absolute approximation constants against it.
    #[arg(long)]
    pub exact_opt: bool,
    /// Count claim violations instead of stopping at the first (mis only).
    #[arg(long)]
    pub lenient: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub algo: Vec<Algo>,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u64>,
    /// Expected degree of the G(n, d/n) inputs.
    #[arg(long, default_value_t = 8.0)]
    pub avg_degree: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add the randomized baseline of each algorithm.
    #[arg(long)]
    pub baselines: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleCheck {
    /// Exact maximum matching, cross-checked with blossom.
    MaxMatching,
    /// Approximate matching checked against the exact optimum.
    MatchingRatio,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum)]
    pub check: OracleCheck,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}
