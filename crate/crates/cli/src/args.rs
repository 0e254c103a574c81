use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sepfrag", version, about = "Analyze, translate, decide and generate separated-fragment sentences")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A formula given inline, as a path to a file, or as `-` for stdin.
#[derive(Clone, Debug, Args)]
pub struct Input {
    /// Formula text, a file containing one, or `-` for standard input.
    #[arg(value_name = "FORMULA", required_unless_present = "file")]
    pub formula: Option<String>,
    /// Read the formula from this file.
    #[arg(long, value_name = "FILE", conflicts_with = "formula")]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Dpll,
    Horn,
    Krom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EquivMethod {
    /// Enumerate every structure.
    Enumerate,
    /// Ground and call a SAT solver.
    Ground,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report fragment membership, degree of interaction and model-size bounds.
    Check(Input),
    /// Translate a separated sentence into an equivalent ∃*∀* sentence.
    ToBsr(Input),
    /// Decide satisfiability. Exit code 0 SAT, 1 UNSAT, 2 inconclusive.
    Decide {
        #[command(flatten)]
        input: Input,
        /// Largest domain size to search.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
        backend: BackendArg,
        /// Write the model, if one is found, to this file as JSON.
        #[arg(long, value_name = "FILE")]
        emit_model: Option<PathBuf>,
    },
    /// Generate benchmark sentences.
    #[command(subcommand)]
    Gen(Gen),
    /// Replace equality by a fresh predicate with its axioms.
    EliminateEq(Input),
    /// Expand counting quantifiers into plain existentials.
    ExpandCounting(Input),
    /// Evaluate a sentence in a structure.
    Eval {
        #[command(flatten)]
        input: Input,
        /// Structure JSON file.
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
    },
    /// Compare two formulas on all structures up to a size.
    Equiv {
        /// First formula, file or `-`.
        left: String,
        /// Second formula, file or `-`.
        right: String,
        #[arg(long, default_value_t = 3)]
        up_to: usize,
        #[arg(long, value_enum, default_value_t = EquivMethod::Enumerate)]
        method: EquivMethod,
    },
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// The index hierarchy for parameters kappa and mu.
    Hierarchy {
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        mu: usize,
        /// Also emit the intended model.
        #[arg(long)]
        with_model: bool,
    },
    /// The encoding of a domino system on the top-level torus.
    Domino {
        /// Domino system JSON file.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        mu: usize,
        /// Search for a tiling and emit the model it induces.
        #[arg(long)]
        with_model: bool,
    },
    /// The n-th member of the family with many forced leading existentials.
    Hard {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        with_model: bool,
    },
    /// Translate a sentence with a known model-size bound into the fragment.
    Smp {
        #[arg(long)]
        bound: u64,
        #[command(flatten)]
        input: Input,
    },
}
