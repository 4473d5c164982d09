use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "phylogf", version, about = "Counts and asymptotics of tree-child and normal networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain, env = "PHYLOGF_FORMAT")]
    pub format: Format,

    /// Write to this file instead of stdout
    #[arg(long, global = true, env = "PHYLOGF_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Normal,
    #[value(alias = "tree-child", alias = "tc")]
    Treechild,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct ClassK {
    /// Network class
    #[arg(long = "class", value_enum, env = "PHYLOGF_CLASS")]
    pub class: ClassArg,

    /// Number of reticulations
    #[arg(short = 'k', env = "PHYLOGF_K")]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct NSelect {
    /// Number of vertices
    #[arg(short = 'n', long = "n", env = "PHYLOGF_N", conflicts_with = "n_range")]
    pub n: Option<usize>,

    /// Inclusive range `A..B` of vertex counts
    #[arg(long = "n-range", env = "PHYLOGF_N_RANGE")]
    pub n_range: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact number of vertex-labeled networks
    Count {
        #[command(flatten)]
        ck: ClassK,
        #[command(flatten)]
        ns: NSelect,
    },
    /// Exact number of leaf-labeled networks
    Leafcount {
        #[command(flatten)]
        ck: ClassK,
        /// Number of leaves
        #[arg(short = 'l', env = "PHYLOGF_L")]
        l: usize,
    },
    /// Asymptotic estimate of a count
    Asym {
        #[command(flatten)]
        ck: ClassK,
        #[command(flatten)]
        ns: NSelect,
        /// Estimate the leaf-labeled count with this many leaves instead
        #[arg(short = 'l', env = "PHYLOGF_L", conflicts_with_all = ["n", "n_range"])]
        l: Option<usize>,
        /// Number of terms of the expansion
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2), env = "PHYLOGF_ORDER")]
        order: u8,
        /// Significant digits
        #[arg(long, default_value_t = 10, env = "PHYLOGF_DIGITS")]
        digits: u32,
    },
    /// Exact counts next to both estimates, one row per n
    Table {
        #[command(flatten)]
        ck: ClassK,
        /// Comma-separated rows (default: odd squares 49..961)
        #[arg(long, value_delimiter = ',', env = "PHYLOGF_ROWS")]
        rows: Vec<usize>,
        /// Working precision in digits
        #[arg(long, default_value_t = phylogf::asym::DEFAULT_DIGITS, env = "PHYLOGF_DIGITS")]
        digits: u32,
    },
    /// Exhaustive enumeration compared against the series
    Oracle {
        /// Network class (`all` imposes no class condition)
        #[arg(long = "class", value_enum, env = "PHYLOGF_CLASS")]
        class: ClassArg,
        #[arg(short = 'k', env = "PHYLOGF_K")]
        k: usize,
        #[command(flatten)]
        ns: NSelect,
        /// Largest n enumerated without a warning; up to cap + 2 is allowed
        #[arg(long, default_value_t = phylogf::oracle::DEFAULT_CAP, env = "PHYLOGF_ORACLE_CAP")]
        oracle_cap: usize,
    },
    /// Run the cross-check suite
    Verify {
        #[arg(value_enum, default_value_t = Level::Fast)]
        level: Level,
    },
}
