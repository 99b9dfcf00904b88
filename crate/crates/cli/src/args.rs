use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seaweed_core::Family;

const VERTEX_NOTE: &str = "Vertices are numbered 1..N clockwise (left to right for finite \
flavors). Figures that label the top vertex of the circle 0 show vertex N of this tool.";

#[derive(Debug, Parser)]
#[command(name = "seaweed", version, about = "Index of seaweed subalgebras via meander graphs", after_help = VERTEX_NOTE)]
pub struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true, env = "SEAWEED_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the index of one seaweed and cross-check it.
    #[command(after_help = VERTEX_NOTE)]
    Index {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        oracles: OracleArgs,
        #[arg(long, value_enum, default_value_t = IndexFormat::Text)]
        format: IndexFormat,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the meander graph.
    #[command(after_help = VERTEX_NOTE)]
    Graph {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every valid cut pair of each flavor up to a rank bound.
    Verify(VerifyArgs),
    /// Tabulate a sweep of instances as CSV.
    Table(TableArgs),
    /// Evaluate a closed-form index.
    ClosedForm {
        #[command(subcommand)]
        which: ClosedForm,
    },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// affine-a, affine-c, finite-a, finite-b or finite-c.
    #[arg(long)]
    pub family: Family,
    /// Rank parameter n of the type A families.
    #[arg(long, conflicts_with = "r")]
    pub n: Option<usize>,
    /// Rank parameter r of the type B and C families.
    #[arg(long)]
    pub r: Option<usize>,
    /// Removed simple roots I, comma separated (an empty value means none).
    #[arg(long, value_parser = parse_index_list, num_args = 0..=1, default_missing_value = "", conflicts_with = "outer_set")]
    pub outer: Option<BTreeSet<usize>>,
    /// Removed simple roots I′, comma separated.
    #[arg(long, value_parser = parse_index_list, num_args = 0..=1, default_missing_value = "", conflicts_with = "inner_set")]
    pub inner: Option<BTreeSet<usize>>,
    /// Retained simple roots S instead of I.
    #[arg(long, value_parser = parse_index_list, num_args = 0..=1, default_missing_value = "")]
    pub outer_set: Option<BTreeSet<usize>>,
    /// Retained simple roots S′ instead of I′.
    #[arg(long, value_parser = parse_index_list, num_args = 0..=1, default_missing_value = "")]
    pub inner_set: Option<BTreeSet<usize>>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Skip the rank-formula oracle.
    #[arg(long)]
    pub no_tyj: bool,
    /// Also compute the index from an explicit realization (type A only).
    #[arg(long)]
    pub brute: bool,
    /// Random functionals tried by the brute-force oracle.
    #[arg(long, default_value_t = 5, requires = "brute")]
    pub trials: u32,
    /// Seed of the brute-force oracle.
    #[arg(long, requires = "brute")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Tikz,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Families to sweep (repeatable); all of them by default.
    #[arg(long = "family")]
    pub families: Vec<Family>,
    /// Largest rank swept; defaults to 8 for the type A families and 5 otherwise.
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// Also run the brute-force oracle on type A flavors up to --brute-max-rank.
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value_t = 6, requires = "brute")]
    pub brute_max_rank: usize,
    #[arg(long, default_value_t = 5, requires = "brute")]
    pub trials: u32,
    #[arg(long, requires = "brute")]
    pub seed: Option<u64>,
    /// Refuse to start when the sweep exceeds this many cut pairs.
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: u128,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// Affine A, I={0}, I′={d} for 1 <= d <= n/2, with the gcd closed form.
    Gcd,
    /// Affine C, I={i}, I′={j}, with the closed form for maximal cuts.
    Cmax,
    /// A finite family with I = I′ = ∅ (the whole algebra).
    Levi,
    /// Every valid cut pair of one flavor.
    All,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub sweep: Sweep,
    /// Upper rank bound for gcd, cmax and levi sweeps; the rank for all.
    #[arg(long)]
    pub max: usize,
    /// Family for the levi and all sweeps.
    #[arg(long)]
    pub family: Option<Family>,
    #[command(flatten)]
    pub oracles: OracleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum ClosedForm {
    /// Affine A with I={0}, I′={d}: gcd(n, 2d) − ι.
    Gcd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Affine C with I={i}, I′={j}: r+1 if i = j, else r−1.
    Cmax {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

fn parse_index_list(s: &str) -> Result<BTreeSet<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("bad index {t:?}: {e}")))
        .collect()
}
