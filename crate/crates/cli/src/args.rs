use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cooccur",
    version,
    about = "Count windows of every length in which a set of items co-occurs"
)]
pub struct Cli {
    /// Output encoding. Defaults to csv, except `prob` which defaults to json.
    #[arg(long, value_enum, global = true)]
    pub output: Option<OutputKind>,

    /// Largest input the brute-force oracles will materialize.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_oracle_n: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Co-occurrence count at one window length.
    Count(CountArgs),
    /// Co-occurrence count at every window length.
    Curve(CurveArgs),
    /// Gap histogram.
    Hist(CurveArgs),
    /// Co-occurrence curve of string patterns.
    Patterns(PatternArgs),
    /// Probability that all items occur within a time radius.
    Prob(ProbArgs),
    /// Compare fast paths with brute-force oracles on random inputs.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Whitespace-separated tokens.
    Tokens,
    /// Every character is an item; line breaks are ignored.
    Chars,
    /// FASTA: header lines skipped, sequence lines concatenated and uppercased.
    Fasta,
    /// One line per index with comma-separated items; blank lines are empty sets.
    Sets,
    /// CSV rows `item,timestamp`.
    Events,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputKind {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_enum, default_value = "tokens")]
    pub format: InputFormat,

    /// Input file; standard input when absent.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_delimiter = ',', required = true)]
    pub items: Vec<String>,

    #[arg(long)]
    pub window: usize,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_delimiter = ',', required = true)]
    pub items: Vec<String>,

    /// Use the brute-force oracle instead of the single-pass algorithm.
    #[arg(long, conflicts_with = "verify")]
    pub oracle: bool,

    /// Run both and exit with status 3 if they differ.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Comma-separated patterns. With `--format tokens` each pattern is a
    /// whitespace-separated token string.
    #[arg(long, value_delimiter = ',', required = true)]
    pub patterns: Vec<String>,

    #[arg(long, conflicts_with = "verify")]
    pub oracle: bool,

    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    /// Events CSV (`item,timestamp`); standard input when absent.
    pub input: Option<PathBuf>,

    /// Accepted for symmetry with other commands; only `events` is valid.
    #[arg(long, value_enum, default_value = "events")]
    pub format: InputFormat,

    #[arg(long, value_delimiter = ',', required = true)]
    pub items: Vec<String>,

    /// Horizon: timestamps lie in [0, tau].
    #[arg(long)]
    pub tau: f64,

    /// Grid cell width.
    #[arg(long)]
    pub grid: f64,

    /// Time radius around the random instant.
    #[arg(long)]
    pub radius: f64,

    /// Also report the exact probability from interval arithmetic.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random instances per family (itemsets, multi-sequences, patterns).
    #[arg(long, default_value_t = 20)]
    pub cases: usize,

    /// Exit with status 3 on any mismatch.
    #[arg(long)]
    pub verify: bool,
}
