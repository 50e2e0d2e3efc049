use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wicks", version, about = "Genus, isomorphism and standard diagrams of quadratic words and knot diagrams")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOptions {
    /// Emit JSON (one object per instance) instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Alphabet used when printing words.
    #[arg(long, global = true, value_enum, default_value_t = Format::Int)]
    pub format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Process batch items concurrently; output order is unchanged.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Maximum number of Bieulerian paths to search for.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Batch input: one instance per line, or per blank-line separated block for graphs.
    #[arg(long, global = true, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Int,
    Alpha,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Linear,
    Perm,
    Bounded,
    Oracle,
    /// Run every applicable method and check that they agree.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realizability {
    Parity,
    Exact,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a word is a cyclically reduced quadratic word (and optionally a Wicks form).
    Validate {
        word: Vec<String>,
        /// Also require the Wicks condition.
        #[arg(long)]
        wicks: bool,
    },
    /// Genus of a quadratic word.
    Genus {
        word: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Linear)]
        method: Method,
        /// Largest letter count accepted by the rank oracle.
        #[arg(long, default_value_t = wicks_core::genus::DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Isomorphism of two words up to rotation and renaming. In batch mode each
    /// line holds two words separated by `|`.
    Iso {
        first: Option<String>,
        second: Option<String>,
        /// Also accept the reversed, inverted second word.
        #[arg(long)]
        mirror: bool,
        /// Letters may not be renamed to inverse letters.
        #[arg(long)]
        strict: bool,
        /// Use the quadratic-time comparator instead of KMP.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Seifert circles, genus, alternation and reducedness of a Gauss code.
    Diagram {
        code: Vec<String>,
        /// Read plain chord labels (each crossing id twice, no over/under marks)
        /// and only test realizability.
        #[arg(long)]
        chords: bool,
        /// Also test realizability of the underlying chord diagram.
        #[arg(long, value_enum)]
        realizable: Option<Realizability>,
        /// Largest crossing count for exact realizability.
        #[arg(long, default_value_t = wicks_core::diagram::DEFAULT_EXACT_BOUND)]
        exact_bound: usize,
    },
    /// Quadratic word of a Gauss code.
    WordFromGauss { code: Vec<String> },
    /// Planarity, 3-connectivity and Bieulerian paths of a cubic graph file.
    Graph { path: Option<PathBuf> },
    /// Standard alternating diagram from a planar 3-connected cubic graph file.
    StandardKnot {
        path: Option<PathBuf>,
        /// Which Bieulerian path to use, counted from 1 in search order.
        #[arg(long, default_value_t = 1)]
        path_index: usize,
    },
    /// Wall time of the genus and isomorphism algorithms on random words.
    Bench {
        /// Word lengths (2n) to measure.
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000, 1_000_000, 2_000_000])]
        lengths: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Method::Linear)]
        method: Method,
    },
}
