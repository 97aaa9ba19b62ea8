// SPDX-License-Identifier: Apache-2.0

//! `tristream`: exact counts, streaming estimates, tracking, stream
//! orderings and the experiment suite.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tristream::{EstimatorConfig, OrderingKind};

mod commands;

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "tristream", version, about = "Streaming triangle and transitivity estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact vertex, edge, wedge and triangle counts and transitivity.
    Exact {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Streams the input once and prints the final estimate.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        reservoirs: ReservoirArgs,
        /// Ordering applied to a built-in graph; files stream as written.
        #[arg(long, default_value = "random")]
        ordering: OrderingKind,
        /// Feed repeated edges to the estimator instead of skipping them.
        #[arg(long)]
        no_dedup: bool,
    },
    /// Writes the estimate every `--every` edges as CSV.
    Track {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        reservoirs: ReservoirArgs,
        #[arg(long, default_value = "random")]
        ordering: OrderingKind,
        #[arg(long)]
        every: usize,
        /// Also recompute exact prefix values at every checkpoint (slow).
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        output: PathBuf,
    },
    /// Writes the input edges in the chosen order, one `u v` per line.
    Order {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "random")]
        ordering: OrderingKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs an experiment and writes its CSV into `--output`.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge-list file, or `-` for standard input.
    #[arg(required_unless_present = "graph", conflicts_with = "graph")]
    input: Option<PathBuf>,
    /// Built-in graph instead of a file.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(tristream::synth::BUILTIN_NAMES))]
    graph: Option<String>,
    /// Seed for generating the built-in graph.
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
}

#[derive(Debug, Args, Clone, Copy)]
struct ReservoirArgs {
    /// Edge reservoir slots.
    #[arg(long, default_value_t = EstimatorConfig::DEFAULT_SLOTS)]
    se: usize,
    /// Wedge reservoir slots.
    #[arg(long, default_value_t = EstimatorConfig::DEFAULT_SLOTS)]
    sw: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Convergence,
    Sweep,
    Orderings,
    Singlebit,
    Birthday,
    Tracking,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    name: Experiment,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    reservoirs: ReservoirArgs,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Worker threads for independent trials.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory receiving the CSV.
    #[arg(long, default_value = ".")]
    output: PathBuf,
    /// Stream ordering for `birthday` and `tracking`.
    #[arg(long, default_value = "random")]
    ordering: OrderingKind,
    /// Reservoir sizes for `convergence`.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    sizes: Vec<usize>,
    /// Reservoir held fixed by `sweep`.
    #[arg(long, default_value = "edge")]
    fixed: tristream::harness::FixedReservoir,
    #[arg(long, default_value_t = 10_000)]
    fixed_value: usize,
    /// Sizes of the other reservoir for `sweep`.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,5000,10000,20000")]
    values: Vec<usize>,
    /// Edges drawn per trial by `birthday`.
    #[arg(long, default_value_t = 2)]
    samples: usize,
    /// Total edge storage for `singlebit`; defaults to `--se` plus `--sw`.
    #[arg(long)]
    budget: Option<usize>,
    /// One-bit reservoir sizes for `singlebit`.
    #[arg(long, value_delimiter = ',', default_value = "2000")]
    sb_slots: Vec<usize>,
    /// Checkpoint interval for `tracking`; a tenth of the stream by default.
    #[arg(long)]
    every: Option<usize>,
    /// Exact prefix values at each `tracking` checkpoint.
    #[arg(long)]
    exact: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(err.exit_code().clamp(0, 255) as u8);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("tristream: {err}");
            ExitCode::from(if err.is_usage() { EXIT_USAGE } else { EXIT_IO })
        }
    }
}
