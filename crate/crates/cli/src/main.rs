//! `gensig`: command-line front end for the generalized signotope toolkit.
//!
//! Exit status is 0 on success, 1 when a check fails or a counterexample is
//! found, and 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gensig_core::CanonMode;

#[derive(Parser, Debug)]
#[command(name = "gensig", version, about = "Generalized signotopes: enumeration, classes, crossings, separability")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads (1 = sequential).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Seed for randomized subcommands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Relabel,
    Flip,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Triples,
    Signs,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Count signotopes on N elements, or their classes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        classes: Option<ClassArg>,
        /// Symmetry group for classes: relabel-only or relabel-and-negate.
        #[arg(long, default_value = "relabel-and-negate")]
        mode: CanonMode,
        /// Permit n >= 7 (long runs).
        #[arg(long)]
        allow_large: bool,
    },
    /// Write every signotope on N elements in lex order of sign strings.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "triples")]
        format: OutFormat,
        /// Permit n >= 7 (long runs).
        #[arg(long)]
        allow_large: bool,
    },
    /// Check every object in a file for forbidden patterns.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Strong separator of A from B, or a 4-subset violating the hypothesis.
    Kirchberger {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u8>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u8>,
    },
    /// Separator tables for the 1-vs-3 and 2-vs-2 splits of 4 elements.
    Tables,
    /// Exhaustive (n <= 6) or sampled check of the separation theorem.
    VerifyKirchberger {
        #[arg(long)]
        n: usize,
        /// Random signotopes to sample instead of an exhaustive run.
        #[arg(long)]
        samples: Option<usize>,
        /// Random (A, B) pairs per sampled signotope.
        #[arg(long, default_value_t = 200)]
        splits: usize,
    },
    /// Crossing numbers of the objects in a file.
    Crossings {
        #[arg(long)]
        input: PathBuf,
        /// Also list the type of every 4-subset.
        #[arg(long)]
        per_tuple: bool,
    },
    /// Minimum crossing number over all signotopes on N elements.
    MinCrossings {
        #[arg(long)]
        n: usize,
        /// Permit n >= 7 (long runs).
        #[arg(long)]
        allow_large: bool,
        /// Stop the search after this many nodes (upper bound only).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Verify the built-in reference listings.
    CheckListings,
    /// All-plus extension of every object in a file.
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        to: usize,
    },
    /// Three-block product of three signotopes and a sign map.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long, conflicts_with = "map_random")]
        map: Option<PathBuf>,
        #[arg(long)]
        map_random: bool,
    },
    /// Upper-bound constant c(t) and the lower-bound exponents f(n).
    Bounds {
        #[arg(long, default_value_t = 7)]
        t: usize,
        /// Use this count for g(t) instead of computing it.
        #[arg(long)]
        g: Option<u128>,
        #[arg(long, default_value_t = 300)]
        max_n: usize,
        /// Compute g(7) instead of using the known value.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Include the 7-element counts.
        #[arg(long)]
        large: bool,
        /// Replace the expected 1-vs-3 table (rendered `pattern | separators` form).
        #[arg(long)]
        expect_table1: Option<PathBuf>,
        /// Replace the expected 2-vs-2 table.
        #[arg(long)]
        expect_table2: Option<PathBuf>,
    },
}

/// Failure kinds mapped to exit codes.
pub enum Failure {
    /// A check failed or a counterexample was found.
    Falsified,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<gensig_core::Error> for Failure {
    fn from(e: gensig_core::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
