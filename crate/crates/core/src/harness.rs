// SPDX-License-Identifier: Apache-2.0

//! Experiment drivers and CSV output.
//!
//! Every driver is deterministic in its inputs and seed. Trials fan out over
//! `jobs` worker threads; results are collected in trial order, so the job
//! count never changes the output.
//!
//! Trial `i` of a driver called with `seed` orders the edges using
//! `derive_seed(derive_seed(seed, i), 0)` and seeds its estimator with
//! `derive_seed(derive_seed(seed, i), 1)`.

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::estimator::{EstimatorConfig, StreamingTriangles};
use crate::graph::{exact_count, future_closed_wedges, AdjacencyGraph, Edge, ExactStats, Wedge};
use crate::rng::{derive_seed, seeded};
use crate::single_bit::sb_ensemble;
use crate::stream::{order_stream, EdgeStream, OrderingKind};

/// Maps `0..n` through `f`, on `jobs` threads when `jobs > 1`. Output order
/// follows the input index.
pub(crate) fn fan_out<T, F>(jobs: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if jobs <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

fn ordering_seed(trial_seed: u64) -> u64 {
    derive_seed(trial_seed, 0)
}

fn estimator_seed(trial_seed: u64) -> u64 {
    derive_seed(trial_seed, 1)
}

/// `|est - exact| / exact`, undefined when `exact` is 0.
pub fn relative_error(est: f64, exact: u64) -> Option<f64> {
    (exact > 0).then(|| (est - exact as f64).abs() / exact as f64)
}

fn undefined_if_none<S: Serializer>(value: &Option<f64>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(x) => serializer.serialize_f64(*x),
        None => serializer.serialize_str("undefined"),
    }
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// `f` over the defined values, or `None` if any value is undefined.
fn summarize(values: &[Option<f64>], f: fn(&[f64]) -> f64) -> Option<f64> {
    values.iter().copied().collect::<Option<Vec<f64>>>().map(|v| f(&v))
}

/// Identifies the input of a trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialLabel {
    pub graph_id: String,
    pub ordering: OrderingKind,
}

impl TrialLabel {
    pub fn new(graph_id: impl Into<String>, ordering: OrderingKind) -> Self {
        TrialLabel {
            graph_id: graph_id.into(),
            ordering,
        }
    }
}

/// Final estimate of one run against the exact values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialResult {
    pub graph_id: String,
    pub ordering: OrderingKind,
    pub seed: u64,
    pub s_e: usize,
    pub s_w: usize,
    pub kappa_exact: f64,
    pub kappa_est: f64,
    pub t_exact: u64,
    pub t_est: f64,
    pub w_exact: u64,
    pub w_est: f64,
    pub abs_err_kappa: f64,
    #[serde(serialize_with = "undefined_if_none")]
    pub rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub rel_err_w: Option<f64>,
    pub edge_replacements: u64,
    /// Seconds spent streaming.
    pub wall_time: f64,
}

/// Feeds `stream` through one estimator and compares the final snapshot
/// with `exact`, which must describe the same edge set.
pub fn run_trial(label: &TrialLabel, stream: &EdgeStream, config: EstimatorConfig, exact: &ExactStats) -> Result<TrialResult> {
    let mut est = StreamingTriangles::new(config)?;
    let start = Instant::now();
    let snap = est.process(stream.edges());
    let wall_time = start.elapsed().as_secs_f64();
    Ok(TrialResult {
        graph_id: label.graph_id.clone(),
        ordering: label.ordering,
        seed: config.seed,
        s_e: config.edge_slots,
        s_w: config.wedge_slots,
        kappa_exact: exact.kappa,
        kappa_est: snap.kappa_est,
        t_exact: exact.triangles,
        t_est: snap.triangles_est,
        w_exact: exact.wedges,
        w_est: snap.wedges_est,
        abs_err_kappa: (snap.kappa_est - exact.kappa).abs(),
        rel_err_t: relative_error(snap.triangles_est, exact.triangles),
        rel_err_w: relative_error(snap.wedges_est, exact.wedges),
        edge_replacements: est.edge_reservoir().replacements(),
        wall_time,
    })
}

/// `trials` independent runs over fresh orderings of `edges`.
#[allow(clippy::too_many_arguments)]
pub fn run_trials(
    graph_id: &str,
    edges: &[Edge],
    exact: &ExactStats,
    ordering: OrderingKind,
    config: EstimatorConfig,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<Vec<TrialResult>> {
    config.validate()?;
    let label = TrialLabel::new(graph_id, ordering);
    fan_out(jobs, trials, |i| {
        let trial_seed = derive_seed(seed, i as u64);
        let stream = order_stream(edges, ordering, ordering_seed(trial_seed));
        run_trial(&label, &stream, config.with_seed(estimator_seed(trial_seed)), exact)
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Checkpoint {
    pub t: u64,
    pub kappa_est: f64,
    pub triangles_est: f64,
    pub wedges_est: f64,
    pub warmup: bool,
    pub kappa_exact: Option<f64>,
    pub triangles_exact: Option<u64>,
}

/// Estimates recorded at regular stream positions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrackingSeries {
    pub checkpoints: Vec<Checkpoint>,
}

/// Records a snapshot every `every` edges. With `exact_at_checkpoints`, the
/// exact transitivity and triangle count of each prefix are recomputed too;
/// that costs a full exact count per checkpoint.
pub fn run_tracking(stream: &EdgeStream, config: EstimatorConfig, every: usize, exact_at_checkpoints: bool) -> Result<TrackingSeries> {
    if every == 0 {
        return Err(Error::Config("checkpoint interval must be at least 1".into()));
    }
    let mut est = StreamingTriangles::new(config)?;
    let mut checkpoints = Vec::with_capacity(stream.len() / every);
    for (i, &e) in stream.edges().iter().enumerate() {
        let snap = est.update(e);
        if (i + 1) % every != 0 {
            continue;
        }
        let exact = exact_at_checkpoints.then(|| exact_count(&AdjacencyGraph::from_edges(stream.edges()[..=i].iter().copied())));
        checkpoints.push(Checkpoint {
            t: snap.t,
            kappa_est: snap.kappa_est,
            triangles_est: snap.triangles_est,
            wedges_est: snap.wedges_est,
            warmup: snap.warmup,
            kappa_exact: exact.map(|x| x.kappa),
            triangles_exact: exact.map(|x| x.triangles),
        });
    }
    Ok(TrackingSeries { checkpoints })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub size: usize,
    pub trials: usize,
    pub mean_abs_err_kappa: f64,
    pub median_abs_err_kappa: f64,
    #[serde(serialize_with = "undefined_if_none")]
    pub mean_rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub median_rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub mean_rel_err_w: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub median_rel_err_w: Option<f64>,
}

/// Error versus storage with equal edge and wedge reservoirs of each size.
pub fn run_convergence(
    graph_id: &str,
    edges: &[Edge],
    exact: &ExactStats,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<Vec<ConvergenceRow>> {
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Config("convergence sizes must be ascending".into()));
    }
    sizes
        .iter()
        .map(|&size| {
            let results = run_trials(
                graph_id,
                edges,
                exact,
                OrderingKind::RandomPermutation,
                EstimatorConfig::symmetric(size, 0),
                trials,
                seed,
                jobs,
            )?;
            let kappa: Vec<f64> = results.iter().map(|r| r.abs_err_kappa).collect();
            let tri: Vec<Option<f64>> = results.iter().map(|r| r.rel_err_t).collect();
            let wed: Vec<Option<f64>> = results.iter().map(|r| r.rel_err_w).collect();
            Ok(ConvergenceRow {
                size,
                trials,
                mean_abs_err_kappa: mean(&kappa),
                median_abs_err_kappa: median(&kappa),
                mean_rel_err_t: summarize(&tri, mean),
                median_rel_err_t: summarize(&tri, median),
                mean_rel_err_w: summarize(&wed, mean),
                median_rel_err_w: summarize(&wed, median),
            })
        })
        .collect()
}

/// Which reservoir a sweep holds fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedReservoir {
    Edge,
    Wedge,
}

impl FixedReservoir {
    pub fn name(&self) -> &'static str {
        match self {
            FixedReservoir::Edge => "edge",
            FixedReservoir::Wedge => "wedge",
        }
    }
}

impl std::str::FromStr for FixedReservoir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(FixedReservoir::Edge),
            "wedge" => Ok(FixedReservoir::Wedge),
            other => Err(Error::Config(format!("unknown reservoir `{other}` (expected edge|wedge)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub fixed: &'static str,
    pub fixed_value: usize,
    pub varying_value: usize,
    pub s_e: usize,
    pub s_w: usize,
    pub trials: usize,
    pub mean_abs_err_kappa: f64,
    /// Mean of `mean_abs_err_kappa` over this and all earlier rows.
    pub running_avg_abs_err_kappa: f64,
    #[serde(serialize_with = "undefined_if_none")]
    pub mean_rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub running_avg_rel_err_t: Option<f64>,
}

/// Error as one reservoir grows while the other stays at `fixed_value`.
#[allow(clippy::too_many_arguments)]
pub fn run_reservoir_sweep(
    graph_id: &str,
    edges: &[Edge],
    exact: &ExactStats,
    fixed: FixedReservoir,
    fixed_value: usize,
    varying: &[usize],
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<Vec<SweepRow>> {
    let mut rows: Vec<SweepRow> = Vec::with_capacity(varying.len());
    let (mut kappa_sum, mut tri_sum) = (0.0, Some(0.0));
    for (k, &value) in varying.iter().enumerate() {
        let (s_e, s_w) = match fixed {
            FixedReservoir::Edge => (fixed_value, value),
            FixedReservoir::Wedge => (value, fixed_value),
        };
        let results = run_trials(
            graph_id,
            edges,
            exact,
            OrderingKind::RandomPermutation,
            EstimatorConfig::new(s_e, s_w, 0),
            trials,
            seed,
            jobs,
        )?;
        let kappa = mean(&results.iter().map(|r| r.abs_err_kappa).collect::<Vec<_>>());
        let tri = summarize(&results.iter().map(|r| r.rel_err_t).collect::<Vec<_>>(), mean);
        kappa_sum += kappa;
        tri_sum = tri_sum.zip(tri).map(|(a, b)| a + b);
        let seen = (k + 1) as f64;
        rows.push(SweepRow {
            fixed: fixed.name(),
            fixed_value,
            varying_value: value,
            s_e,
            s_w,
            trials,
            mean_abs_err_kappa: kappa,
            running_avg_abs_err_kappa: kappa_sum / seen,
            mean_rel_err_t: tri,
            running_avg_rel_err_t: tri_sum.map(|s| s / seen),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingRow {
    pub ordering: OrderingKind,
    pub trials: usize,
    pub median_abs_err_kappa: f64,
    pub mean_abs_err_kappa: f64,
    #[serde(serialize_with = "undefined_if_none")]
    pub median_rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub mean_rel_err_t: Option<f64>,
    #[serde(serialize_with = "undefined_if_none")]
    pub median_rel_err_w: Option<f64>,
}

/// One row per ordering kind, each aggregated over `trials` seeds.
pub fn run_orderings(
    graph_id: &str,
    edges: &[Edge],
    exact: &ExactStats,
    config: EstimatorConfig,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<Vec<OrderingRow>> {
    OrderingKind::ALL
        .into_iter()
        .map(|ordering| {
            let results = run_trials(graph_id, edges, exact, ordering, config, trials, seed, jobs)?;
            let kappa: Vec<f64> = results.iter().map(|r| r.abs_err_kappa).collect();
            let tri: Vec<Option<f64>> = results.iter().map(|r| r.rel_err_t).collect();
            let wed: Vec<Option<f64>> = results.iter().map(|r| r.rel_err_w).collect();
            Ok(OrderingRow {
                ordering,
                trials,
                median_abs_err_kappa: median(&kappa),
                mean_abs_err_kappa: mean(&kappa),
                median_rel_err_t: summarize(&tri, median),
                mean_rel_err_t: summarize(&tri, mean),
                median_rel_err_w: summarize(&wed, median),
            })
        })
        .collect()
}

/// Wedge family counted by [`verify_birthday`].
#[derive(Clone, Copy, Debug)]
pub enum BirthdayTarget<'a> {
    /// Every wedge of the graph.
    AllWedges,
    /// Future-closed wedges of this stream, which must hold the graph's edges.
    FutureClosed(&'a [Edge]),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BirthdayReport {
    pub target: &'static str,
    pub samples: usize,
    pub trials: usize,
    pub m: u64,
    pub target_size: u64,
    /// `s (s - 1) |S| / m^2`
    pub analytic_mean: f64,
    pub empirical_mean: f64,
    pub std_error: f64,
    #[serde(serialize_with = "undefined_if_none")]
    pub rel_diff: Option<f64>,
}

/// Draws `samples` i.i.d. uniform edges per trial and counts the sample
/// pairs forming a wedge of the target family, against the analytic mean.
pub fn verify_birthday(edges: &[Edge], target: BirthdayTarget<'_>, samples: usize, trials: usize, seed: u64) -> Result<BirthdayReport> {
    if samples < 2 {
        return Err(Error::Config("birthday check needs at least 2 samples".into()));
    }
    if edges.is_empty() || trials == 0 {
        return Err(Error::Config("birthday check needs a non-empty graph and at least one trial".into()));
    }
    let distinct: HashSet<Edge> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return Err(Error::Config("birthday check needs distinct edges".into()));
    }
    let m = edges.len() as u64;
    let (name, family) = match target {
        BirthdayTarget::AllWedges => ("all_wedges", None),
        BirthdayTarget::FutureClosed(stream) => {
            let fc: HashSet<Wedge> = future_closed_wedges(stream).into_iter().map(|(w, _)| w).collect();
            ("future_closed", Some(fc))
        }
    };
    let target_size = match &family {
        None => AdjacencyGraph::from_edges(edges.iter().copied()).wedge_count(),
        Some(fc) => fc.len() as u64,
    };

    let mut rng = seeded(seed);
    let mut draw = Vec::with_capacity(samples);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        draw.clear();
        draw.extend((0..samples).map(|_| edges[rng.random_range(0..edges.len())]));
        let x = match &family {
            None => count_sample_wedges(&draw),
            Some(fc) => {
                let mut x = 0u64;
                for i in 0..draw.len() {
                    for j in i + 1..draw.len() {
                        if Wedge::from_edges(&draw[i], &draw[j]).is_some_and(|w| fc.contains(&w)) {
                            x += 1;
                        }
                    }
                }
                x
            }
        } as f64;
        sum += x;
        sum_sq += x * x;
    }
    let n = trials as f64;
    let empirical_mean = sum / n;
    let var = if trials > 1 {
        (sum_sq - n * empirical_mean * empirical_mean).max(0.0) / (n - 1.0)
    } else {
        0.0
    };
    let s = samples as f64;
    let analytic_mean = s * (s - 1.0) * target_size as f64 / (m as f64 * m as f64);
    Ok(BirthdayReport {
        target: name,
        samples,
        trials,
        m,
        target_size,
        analytic_mean,
        empirical_mean,
        std_error: (var / n).sqrt(),
        rel_diff: (analytic_mean > 0.0).then(|| (empirical_mean - analytic_mean).abs() / analytic_mean),
    })
}

/// Slot pairs of a multiset sample forming a wedge.
fn count_sample_wedges(sample: &[Edge]) -> u64 {
    let mut incidence: HashMap<u64, u64> = HashMap::new();
    let mut multiplicity: HashMap<Edge, u64> = HashMap::new();
    for e in sample {
        *incidence.entry(e.u()).or_default() += 1;
        *incidence.entry(e.v()).or_default() += 1;
        *multiplicity.entry(*e).or_default() += 1;
    }
    let pairs = |c: &u64| c * c.saturating_sub(1) / 2;
    incidence.values().map(pairs).sum::<u64>() - 2 * multiplicity.values().map(pairs).sum::<u64>()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub method: &'static str,
    pub s_e: usize,
    pub s_w: usize,
    pub instances: usize,
    /// Edges stored in total.
    pub storage: usize,
    pub trials: usize,
    pub median_abs_err_kappa: f64,
    pub mean_abs_err_kappa: f64,
}

/// Reservoir reuse against independent one-bit instances at equal storage.
///
/// The streaming estimator gets `budget / 2` edge and wedge slots. Each
/// entry of `single_bit_slots` yields a one-bit ensemble of `budget / r`
/// instances with `r` slots each. Every trial uses a fresh random ordering
/// shared by all methods.
#[allow(clippy::too_many_arguments)]
pub fn compare_singlebit(
    edges: &[Edge],
    exact: &ExactStats,
    budget: usize,
    single_bit_slots: &[usize],
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<Vec<CompareRow>> {
    let half = budget / 2;
    let st_config = EstimatorConfig::symmetric(half, 0);
    st_config.validate()?;
    for &r in single_bit_slots {
        if r == 0 || r > budget {
            return Err(Error::Config(format!("single-bit reservoir of {r} slots does not fit a budget of {budget}")));
        }
    }

    let streams: Vec<(u64, EdgeStream)> = (0..trials)
        .map(|i| {
            let trial_seed = derive_seed(seed, i as u64);
            (trial_seed, order_stream(edges, OrderingKind::RandomPermutation, ordering_seed(trial_seed)))
        })
        .collect();

    let st_errors: Vec<f64> = fan_out(jobs, trials, |i| {
        let (trial_seed, stream) = &streams[i];
        let mut est = StreamingTriangles::new(st_config.with_seed(estimator_seed(*trial_seed))).expect("validated");
        (est.process(stream.edges()).kappa_est - exact.kappa).abs()
    });
    let mut rows = vec![CompareRow {
        method: "streaming-triangles",
        s_e: half,
        s_w: half,
        instances: 1,
        storage: 2 * half,
        trials,
        median_abs_err_kappa: median(&st_errors),
        mean_abs_err_kappa: mean(&st_errors),
    }];

    for &r in single_bit_slots {
        let instances = budget / r;
        let mut errors = Vec::with_capacity(trials);
        for (trial_seed, stream) in &streams {
            let out = sb_ensemble(stream.edges(), r, instances, derive_seed(*trial_seed, 2), jobs)?;
            errors.push((out.kappa_est - exact.kappa).abs());
        }
        rows.push(CompareRow {
            method: "single-bit",
            s_e: r,
            s_w: 1,
            instances,
            storage: r * instances,
            trials,
            median_abs_err_kappa: median(&errors),
            mean_abs_err_kappa: mean(&errors),
        });
    }
    Ok(rows)
}

/// Writes `rows` as CSV with a header row taken from the field names.
pub fn write_csv_to<W: Write, T: Serialize>(writer: W, rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// File name `<experiment>_<graph>_<unix-seconds>.csv`.
pub fn csv_file_name(experiment: &str, graph_id: &str, unix_seconds: u64) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '-' })
            .collect()
    };
    format!("{}_{}_{}.csv", clean(experiment), clean(graph_id), unix_seconds)
}

/// Writes `rows` under `dir` using [`csv_file_name`] with the current time.
pub fn write_csv<T: Serialize>(dir: &Path, experiment: &str, graph_id: &str, rows: &[T]) -> Result<PathBuf> {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let path = dir.join(csv_file_name(experiment, graph_id, now));
    write_csv_at(&path, rows)?;
    Ok(path)
}

/// Writes `rows` to the file at `path`, replacing it.
pub fn write_csv_at<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::file(path, e))?;
    write_csv_to(file, rows).map_err(|err| match err {
        Error::Io(source) => Error::file(path, source),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use crate::synth;

    fn e(u: VertexId, v: VertexId) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn stats(edges: &[Edge]) -> ExactStats {
        exact_count(&AdjacencyGraph::from_edges(edges.iter().copied()))
    }

    #[test]
    fn median_and_mean() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(mean(&[1.0, 2.0, 6.0]), 3.0);
        assert!(median(&[]).is_nan());
    }

    #[test]
    fn k3_trials_with_big_reservoirs() {
        let k3 = synth::complete(3);
        let exact = stats(&k3);
        let results = run_trials("k3", &k3, &exact, OrderingKind::RandomPermutation, EstimatorConfig::symmetric(100, 0), 50, 1, 1).unwrap();
        assert!(results.iter().all(|r| r.abs_err_kappa <= 1.0 + 1e-12 || r.kappa_est > 1.0));
        let med = median(&results.iter().map(|r| r.abs_err_kappa).collect::<Vec<_>>());
        assert!(med <= 0.2, "median {med}");
    }

    #[test]
    fn forest_has_zero_triangles_and_undefined_error() {
        let tree = synth::random_tree(300, 2);
        let exact = stats(&tree);
        let stream = order_stream(&tree, OrderingKind::RandomPermutation, 0);
        let r = run_trial(&TrialLabel::new("tree", OrderingKind::RandomPermutation), &stream, EstimatorConfig::symmetric(50, 3), &exact).unwrap();
        assert_eq!(r.t_est, 0.0);
        assert_eq!(r.rel_err_t, None);
        let mut buf = Vec::new();
        write_csv_to(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "graph_id,ordering,seed,s_e,s_w,kappa_exact,kappa_est,t_exact,t_est,w_exact,w_est,abs_err_kappa,rel_err_t,rel_err_w,edge_replacements,wall_time"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[1], "random");
        assert_eq!(row[12], "undefined");
    }

    #[test]
    fn tracking_checkpoint_counts() {
        let g = synth::erdos_renyi(100, 0.2, 1);
        let stream = EdgeStream::new(g[..1000].to_vec()).unwrap();
        let series = run_tracking(&stream, EstimatorConfig::symmetric(50, 0), 100, false).unwrap();
        assert_eq!(series.checkpoints.len(), 10);
        assert!(series.checkpoints.windows(2).all(|w| w[0].t < w[1].t));
        assert!(series.checkpoints[0].kappa_exact.is_none());

        let ten = EdgeStream::new(g[..10].to_vec()).unwrap();
        assert_eq!(run_tracking(&ten, EstimatorConfig::symmetric(5, 0), 5, true).unwrap().checkpoints.len(), 2);
        let every = run_tracking(&ten, EstimatorConfig::symmetric(5, 0), 1, true).unwrap();
        assert_eq!(every.checkpoints.len(), 10);
        assert_eq!(every.checkpoints[9].triangles_exact, Some(stats(&g[..10]).triangles));
        assert!(run_tracking(&ten, EstimatorConfig::symmetric(5, 0), 0, false).is_err());
    }

    #[test]
    fn sweep_running_average_is_prefix_mean() {
        let g = synth::erdos_renyi(120, 0.1, 5);
        let exact = stats(&g);
        let rows = run_reservoir_sweep("er", &g, &exact, FixedReservoir::Edge, 100, &[1, 5, 20, 60], 4, 3, 1).unwrap();
        for k in 0..rows.len() {
            let prefix: Vec<f64> = rows[..=k].iter().map(|r| r.mean_abs_err_kappa).collect();
            assert!((rows[k].running_avg_abs_err_kappa - mean(&prefix)).abs() < 1e-12);
            assert_eq!(rows[k].s_e, 100);
        }
    }

    #[test]
    fn convergence_rejects_descending_sizes() {
        let g = synth::complete(5);
        assert!(run_convergence("k5", &g, &stats(&g), &[10, 5], 1, 0, 1).is_err());
    }

    #[test]
    fn birthday_k3_analytic_values() {
        let k3 = synth::complete(3);
        // Of the 9 ordered draws of two edges, 6 pick distinct edges, each a wedge.
        let r = verify_birthday(&k3, BirthdayTarget::AllWedges, 2, 100_000, 1).unwrap();
        assert!((r.analytic_mean - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.rel_diff.unwrap() < 0.02, "{r:?}");
        // Only the pair of the two earliest edges is future-closed: 2 of 9.
        let stream = [e(0, 1), e(1, 2), e(0, 2)];
        let r = verify_birthday(&stream, BirthdayTarget::FutureClosed(&stream), 2, 100_000, 2).unwrap();
        assert!((r.analytic_mean - 2.0 / 9.0).abs() < 1e-12);
        assert!(r.rel_diff.unwrap() < 0.03, "{r:?}");
    }

    #[test]
    fn birthday_formula_instantiation() {
        let g = synth::erdos_renyi(40, 0.2, 7);
        let exact = stats(&g);
        let r = verify_birthday(&g, BirthdayTarget::AllWedges, 2, 10, 0).unwrap();
        let m = exact.m as f64;
        assert!((r.analytic_mean - 2.0 * exact.wedges as f64 / (m * m)).abs() < 1e-15);
        assert!(verify_birthday(&g, BirthdayTarget::AllWedges, 1, 10, 0).is_err());
    }

    #[test]
    fn sample_wedge_count_matches_pairs() {
        let sample = [e(1, 2), e(1, 2), e(2, 3), e(3, 4), e(5, 6)];
        // (1,2)x2 with (2,3): 2; (2,3) with (3,4): 1
        assert_eq!(count_sample_wedges(&sample), 3);
    }

    #[test]
    fn tiny_compare_runs() {
        let k4 = synth::complete(4);
        let rows = compare_singlebit(&k4, &stats(&k4), 40, &[10], 3, 0, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].instances, 4);
        assert_eq!(rows[1].storage, 40);
        assert!(compare_singlebit(&k4, &stats(&k4), 40, &[80], 1, 0, 1).is_err());
    }

    #[test]
    fn csv_names() {
        assert_eq!(csv_file_name("convergence", "web/Google.txt", 12), "convergence_web-Google-txt_12.csv");
    }

    #[test]
    fn results_do_not_depend_on_job_count() {
        let g = synth::erdos_renyi(80, 0.15, 3);
        let exact = stats(&g);
        let strip = |v: Vec<TrialResult>| v.into_iter().map(|r| (r.kappa_est, r.t_est, r.seed)).collect::<Vec<_>>();
        let a = run_trials("er", &g, &exact, OrderingKind::Dfs, EstimatorConfig::symmetric(60, 0), 8, 4, 1).unwrap();
        let b = run_trials("er", &g, &exact, OrderingKind::Dfs, EstimatorConfig::symmetric(60, 0), 8, 4, 3).unwrap();
        assert_eq!(strip(a), strip(b));
    }
}
