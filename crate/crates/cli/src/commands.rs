// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use tristream::graph::exact_count;
use tristream::harness::{self, BirthdayTarget};
use tristream::rng::derive_seed;
use tristream::stream::{self, EdgeReader, ParseWarnings};
use tristream::synth;
use clap::ValueEnum;
use tristream::{AdjacencyGraph, Edge, EdgeStream, Error, EstimatorConfig, OrderingKind, Result, StreamingTriangles};

use crate::{Command, Experiment, ExperimentArgs, InputArgs, ReservoirArgs};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Exact { input } => exact(&input),
        Command::Estimate {
            input,
            reservoirs,
            ordering,
            no_dedup,
        } => estimate(&input, reservoirs, ordering, no_dedup),
        Command::Track {
            input,
            reservoirs,
            ordering,
            every,
            exact,
            output,
        } => track(&input, reservoirs, ordering, every, exact, &output),
        Command::Order {
            input,
            ordering,
            seed,
            output,
        } => order(&input, ordering, seed, output.as_deref()),
        Command::Experiment(args) => experiment(&args),
    }
}

fn file_error(path: &Path, source: io::Error) -> Error {
    Error::File {
        path: path.to_path_buf(),
        source,
    }
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdin().lock()));
    }
    let file = File::open(path).map_err(|e| file_error(path, e))?;
    Ok(Box::new(BufReader::new(file)))
}

fn warn(warnings: ParseWarnings) {
    if warnings.total() > 0 {
        eprintln!("tristream: {warnings}");
    }
}

impl InputArgs {
    fn graph_id(&self) -> String {
        match (&self.graph, &self.input) {
            (Some(name), _) => name.clone(),
            (None, Some(path)) if path == Path::new("-") => "stdin".into(),
            (None, Some(path)) => path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned()),
            (None, None) => "input".into(),
        }
    }

    fn describe(&self) -> String {
        match (&self.graph, &self.input) {
            (Some(name), _) => format!("graph={name} graph_seed={}", self.graph_seed),
            (None, Some(path)) => format!("input={}", path.display()),
            (None, None) => String::new(),
        }
    }

    /// The deduplicated edge set, in file order for files.
    fn edges(&self) -> Result<Vec<Edge>> {
        if let Some(name) = &self.graph {
            return synth::builtin(name, self.graph_seed);
        }
        let path = self.input.as_deref().expect("clap requires an input or a graph");
        let (edges, warnings) = stream::parse_edge_list_from(open(path)?)?;
        warn(warnings);
        Ok(edges)
    }

    /// Built-in graphs are ordered with `ordering`; files keep their order.
    fn stream(&self, ordering: OrderingKind, seed: u64) -> Result<EdgeStream> {
        let edges = self.edges()?;
        if self.graph.is_some() {
            Ok(stream::order_stream(&edges, ordering, derive_seed(seed, 0)))
        } else {
            EdgeStream::new(edges)
        }
    }
}

impl ReservoirArgs {
    fn config(&self) -> Result<EstimatorConfig> {
        let config = EstimatorConfig::new(self.se, self.sw, self.seed);
        config.validate()?;
        Ok(config)
    }

    fn describe(&self) -> String {
        format!("seed={} s_e={} s_w={}", self.seed, self.se, self.sw)
    }
}

fn exact(input: &InputArgs) -> Result<()> {
    let edges = input.edges()?;
    let stats = exact_count(&AdjacencyGraph::from_edges(edges));
    println!("{stats}");
    Ok(())
}

fn estimate(input: &InputArgs, reservoirs: ReservoirArgs, ordering: OrderingKind, no_dedup: bool) -> Result<()> {
    let config = reservoirs.config()?;
    println!("# tristream estimate {} {}", reservoirs.describe(), input.describe());
    let mut est = StreamingTriangles::new(config)?;
    if input.graph.is_some() {
        est.process(input.stream(ordering, reservoirs.seed)?.edges());
    } else {
        let path = input.input.as_deref().expect("clap requires an input or a graph");
        let mut reader = EdgeReader::new(open(path)?, !no_dedup);
        for edge in reader.by_ref() {
            est.update(edge?);
        }
        warn(reader.warnings());
    }
    let s = est.snapshot();
    println!(
        "t={} kappa_est={:.6} triangles_est={:.1} wedges_est={:.1} warmup={}",
        s.t, s.kappa_est, s.triangles_est, s.wedges_est, s.warmup
    );
    Ok(())
}

fn track(
    input: &InputArgs,
    reservoirs: ReservoirArgs,
    ordering: OrderingKind,
    every: usize,
    exact: bool,
    output: &Path,
) -> Result<()> {
    let config = reservoirs.config()?;
    println!("# tristream track {} every={every} {}", reservoirs.describe(), input.describe());
    let stream = input.stream(ordering, reservoirs.seed)?;
    let series = harness::run_tracking(&stream, config, every, exact)?;
    harness::write_csv_at(output, &series.checkpoints)?;
    println!("{} checkpoints written to {}", series.checkpoints.len(), output.display());
    Ok(())
}

fn order(input: &InputArgs, ordering: OrderingKind, seed: u64, output: Option<&Path>) -> Result<()> {
    let edges = input.edges()?;
    let stream = stream::order_stream(&edges, ordering, seed);
    match output {
        Some(path) => stream::write_stream(&stream, path),
        None => stream::write_stream_to(&stream, io::stdout().lock()),
    }
}

fn experiment(args: &ExperimentArgs) -> Result<()> {
    let r = &args.reservoirs;
    let graph_id = args.input.graph_id();
    let name = args.name.to_possible_value().expect("no skipped variants").get_name().to_owned();
    println!(
        "# tristream experiment {name} {} trials={} jobs={} {}",
        r.describe(),
        args.trials,
        args.jobs,
        args.input.describe()
    );
    let edges = args.input.edges()?;
    let exact = exact_count(&AdjacencyGraph::from_edges(edges.iter().copied()));
    std::fs::create_dir_all(&args.output).map_err(|e| file_error(&args.output, e))?;
    let dir = args.output.as_path();

    let (path, summary): (PathBuf, String) = match args.name {
        Experiment::Convergence => {
            let rows = harness::run_convergence(&graph_id, &edges, &exact, &args.sizes, args.trials, r.seed, args.jobs)?;
            let summary = rows
                .iter()
                .map(|row| format!("s={} mean_abs_err_kappa={:.5}", row.size, row.mean_abs_err_kappa))
                .collect::<Vec<_>>()
                .join(", ");
            (harness::write_csv(dir, &name, &graph_id, &rows)?, summary)
        }
        Experiment::Sweep => {
            let rows = harness::run_reservoir_sweep(
                &graph_id,
                &edges,
                &exact,
                args.fixed,
                args.fixed_value,
                &args.values,
                args.trials,
                r.seed,
                args.jobs,
            )?;
            let last = rows.last().map_or(f64::NAN, |row| row.running_avg_abs_err_kappa);
            let summary = format!("{} rows, final running average abs_err_kappa={last:.5}", rows.len());
            (harness::write_csv(dir, &name, &graph_id, &rows)?, summary)
        }
        Experiment::Orderings => {
            let rows = harness::run_orderings(&graph_id, &edges, &exact, r.config()?, args.trials, r.seed, args.jobs)?;
            let summary = rows
                .iter()
                .map(|row| format!("{} {:.5}", row.ordering, row.median_abs_err_kappa))
                .collect::<Vec<_>>()
                .join(", ");
            (harness::write_csv(dir, &name, &graph_id, &rows)?, format!("median abs_err_kappa: {summary}"))
        }
        Experiment::Singlebit => {
            let budget = args.budget.unwrap_or(r.se + r.sw);
            let rows = harness::compare_singlebit(&edges, &exact, budget, &args.sb_slots, args.trials, r.seed, args.jobs)?;
            let summary = rows
                .iter()
                .map(|row| format!("{} {}x{} {:.5}", row.method, row.s_e, row.instances, row.median_abs_err_kappa))
                .collect::<Vec<_>>()
                .join(", ");
            (harness::write_csv(dir, &name, &graph_id, &rows)?, format!("median abs_err_kappa: {summary}"))
        }
        Experiment::Birthday => {
            let stream = stream::order_stream(&edges, args.ordering, derive_seed(r.seed, 0));
            let rows = [
                harness::verify_birthday(&edges, BirthdayTarget::AllWedges, args.samples, args.trials, derive_seed(r.seed, 1))?,
                harness::verify_birthday(&edges, BirthdayTarget::FutureClosed(stream.edges()), args.samples, args.trials, derive_seed(r.seed, 2))?,
            ];
            let summary = rows
                .iter()
                .map(|row| format!("{}: analytic={:.4} empirical={:.4}", row.target, row.analytic_mean, row.empirical_mean))
                .collect::<Vec<_>>()
                .join(", ");
            (harness::write_csv(dir, &name, &graph_id, &rows)?, summary)
        }
        Experiment::Tracking => {
            let stream = args.input.stream(args.ordering, r.seed)?;
            let every = args.every.unwrap_or((stream.len() / 10).max(1));
            let series = harness::run_tracking(&stream, r.config()?, every, args.exact)?;
            let summary = match series.checkpoints.last() {
                Some(c) => format!("{} checkpoints, final kappa_est={:.5}", series.checkpoints.len(), c.kappa_est),
                None => "no checkpoints".into(),
            };
            (harness::write_csv(dir, &name, &graph_id, &series.checkpoints)?, summary)
        }
    };
    println!("{summary}");
    println!("wrote {}", path.display());
    io::stdout().flush()?;
    Ok(())
}
