//! `grnorm`: value semigroups, normalization chains and ADE checks for
//! algebroid curves.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "grnorm", version, about = "Normalization chains of algebroid curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format; `structured` is versioned JSON.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Source {
    /// Curve description file.
    #[arg(long = "input", value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// Built-in plane ADE model such as A8, D10 or E7.
    #[arg(long = "ade", value_name = "TYPE")]
    ades: Vec<String>,
    /// Starting provisional box for conductor discovery; overrides the file.
    #[arg(long = "box", value_name = "N")]
    box_: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value semigroup, conductor, tau and the symmetry verdict.
    Semigroup {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Append a staircase picture.
        #[arg(long)]
        diagram: bool,
    },
    /// Full normalization chain; several inputs also give the global length.
    Normalize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        /// Worker threads; results keep input order.
        #[arg(long, value_name = "N")]
        jobs: Option<usize>,
        /// Append staircase pictures of every step.
        #[arg(long)]
        diagram: bool,
    },
    /// Check the ADE closed forms; exits with 1 if any check fails.
    VerifyAde {
        /// The full default range A1-12, D4-12, E6-8.
        #[arg(long)]
        all: bool,
        /// Restrict to one family.
        #[arg(long = "type", value_name = "A|D|E")]
        family: Option<char>,
        /// Index or inclusive range `a..b`.
        #[arg(long = "n", value_name = "RANGE")]
        range: Option<String>,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_name = "N")]
        jobs: Option<usize>,
    },
    /// Staircase pictures, one panel per chain step.
    Diagram {
        #[command(flatten)]
        source: Source,
        /// Only this step of the chain.
        #[arg(long)]
        step: Option<usize>,
        /// Vector graphics instead of the text grid.
        #[arg(long)]
        svg: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
