// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test writes a single `criterion N: PASS|FAIL` line to stderr before
//! asserting.
//! Set `TRISTREAM_AMAZON0505` to an edge-list path to add the amazon0505
//! comparison to criterion 5.

use std::collections::HashSet;
use std::io::Write;
use std::sync::OnceLock;
use std::time::Instant;

use tristream::graph::{brute_force_count, exact_count, future_closed_wedges};
use tristream::harness::{self, median, BirthdayTarget, TrialLabel};
use tristream::rng::derive_seed;
use tristream::single_bit::{sb_ensemble, SingleBit};
use tristream::stream::{order_stream, parse_edge_list};
use tristream::synth::{self, ClusteredParams};
use tristream::{AdjacencyGraph, Edge, EstimatorConfig, ExactStats, OrderingKind, StreamingTriangles};

const DESK_SEEDS: usize = 5;
const DESK_SLOTS: usize = 20_000;

fn stats(edges: &[Edge]) -> ExactStats {
    exact_count(&AdjacencyGraph::from_edges(edges.iter().copied()))
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Writes straight to stderr so the line shows up without `--nocapture`.
fn report(n: u32, ok: bool, detail: String) {
    let line = format!("criterion {n}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {detail}");
}

struct Desk {
    edges: Vec<Edge>,
    exact: ExactStats,
}

fn desk() -> &'static Desk {
    static DESK: OnceLock<Desk> = OnceLock::new();
    DESK.get_or_init(|| {
        let edges = synth::clustered(ClusteredParams::DESK_SCALE, 0x5eed).expect("valid params");
        let exact = stats(&edges);
        Desk { edges, exact }
    })
}

fn desk_trials(ordering: OrderingKind, seed: u64) -> Vec<harness::TrialResult> {
    let d = desk();
    harness::run_trials(
        "clustered",
        &d.edges,
        &d.exact,
        ordering,
        EstimatorConfig::symmetric(DESK_SLOTS, 0),
        DESK_SEEDS,
        seed,
        jobs(),
    )
    .expect("valid config")
}

fn random_trials() -> &'static [harness::TrialResult] {
    static TRIALS: OnceLock<Vec<harness::TrialResult>> = OnceLock::new();
    TRIALS.get_or_init(|| desk_trials(OrderingKind::RandomPermutation, 5))
}

fn medians(results: &[harness::TrialResult]) -> (f64, f64, f64) {
    let pick = |f: fn(&harness::TrialResult) -> f64| median(&results.iter().map(f).collect::<Vec<_>>());
    (
        pick(|r| r.abs_err_kappa),
        pick(|r| r.rel_err_t.expect("graph has triangles")),
        pick(|r| r.rel_err_w.expect("graph has wedges")),
    )
}

#[test]
fn criterion_01_exact_matches_brute_force() {
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..100u64 {
        let n = 5 + i % 46;
        let p = 0.05 + 0.9 * i as f64 / 99.0;
        let g = AdjacencyGraph::from_edges(synth::erdos_renyi(n, p, i));
        if exact_count(&g) != brute_force_count(&g) {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(1, mismatches == 0 && secs < 5.0, format!("mismatches={mismatches} of 100, {secs:.2}s"));
}

#[test]
fn criterion_02_birthday_paradox() {
    let start = Instant::now();
    let trials = 100_000;
    let k3 = synth::complete(3);
    let r = harness::verify_birthday(&k3, BirthdayTarget::AllWedges, 2, trials, 1).unwrap();
    let k3_diff = (r.empirical_mean - 2.0 / 3.0).abs() / (2.0 / 3.0);
    let mut ok = k3_diff <= 0.02 && (r.analytic_mean - 2.0 / 3.0).abs() < 1e-12;
    let mut detail = format!("K3 mean={:.4} diff={:.2}%", r.empirical_mean, 100.0 * k3_diff);

    let g: Vec<Edge> = order_stream(&synth::complete(40), OrderingKind::RandomPermutation, 11).edges()[..200].to_vec();
    let exact = stats(&g);
    let m = exact.m as f64;
    for (k, s) in [5usize, 20].into_iter().enumerate() {
        let r = harness::verify_birthday(&g, BirthdayTarget::AllWedges, s, trials, 2 + k as u64).unwrap();
        let analytic = (s * (s - 1)) as f64 * exact.wedges as f64 / (m * m);
        let diff = (r.empirical_mean - analytic).abs() / analytic;
        ok &= diff <= 0.03 && (r.analytic_mean - analytic).abs() < 1e-9 * analytic;
        detail += &format!("; s={s} mean={:.4} analytic={analytic:.4} diff={:.2}%", r.empirical_mean, 100.0 * diff);
    }
    let secs = start.elapsed().as_secs_f64();
    report(2, ok && secs < 10.0, format!("{detail}; {secs:.2}s"));
}

#[test]
fn criterion_03_single_bit_unbiased() {
    let start = Instant::now();
    let g = synth::erdos_renyi(14, 0.55, 3);
    let exact = stats(&g);
    assert!((40..=60).contains(&exact.m) && exact.triangles >= 5, "{exact}");
    let slots = (4.0 * exact.m as f64 / (exact.triangles as f64).sqrt()).ceil() as usize;
    let stream = order_stream(&g, OrderingKind::RandomPermutation, 4);
    let out = sb_ensemble(stream.edges(), slots, 10_000, 5, jobs()).unwrap();
    let diff = (out.kappa_est - exact.kappa).abs();
    let secs = start.elapsed().as_secs_f64();
    report(
        3,
        diff <= 0.05 && secs < 60.0,
        format!("{exact}, |R|={slots}, 3*mean bit={:.4}, diff={diff:.4}, {secs:.2}s", out.kappa_est),
    );
}

#[test]
fn criterion_04_detected_pairs_are_future_closed() {
    let mut failures = 0;
    for run in 0..50u64 {
        let n = 6 + run % 10;
        let g = synth::erdos_renyi(n, 0.3 + 0.01 * run as f64, 100 + run);
        let stream = order_stream(&g, OrderingKind::RandomPermutation, run);
        let edges = &stream.edges()[..g.len().min(100)];
        let slots = 2 + (run % 19) as usize;
        let future_closed: HashSet<_> = future_closed_wedges(edges).into_iter().map(|(w, _)| w).collect();
        let mut sb = SingleBit::new(slots, derive_seed(7, run)).unwrap();
        for &e in edges {
            sb.step(e);
        }
        let expected: HashSet<_> = sb
            .wedge_pairs()
            .iter()
            .copied()
            .filter(|&p| future_closed.contains(&sb.wedge_of(p).expect("listed pair is a wedge")))
            .collect();
        if &expected != sb.detected_pairs() {
            failures += 1;
        }
    }
    report(4, failures == 0, format!("{failures} of 50 runs differ"));
}

#[test]
fn criterion_05_desk_scale_accuracy() {
    let d = desk();
    let results = random_trials();
    let (kappa, tri, _) = medians(results);
    let slowest = results.iter().map(|r| r.wall_time).fold(0.0, f64::max);
    let mut ok = d.exact.kappa >= 0.05 && (150_000..250_000).contains(&d.exact.m);
    ok &= kappa <= 0.01 && tri <= 0.10 && slowest < 30.0;
    let mut detail = format!(
        "{}; median |dk|={kappa:.5}, median rel T={:.2}%, slowest run {slowest:.2}s",
        d.exact,
        100.0 * tri
    );

    if let Ok(path) = std::env::var("TRISTREAM_AMAZON0505") {
        let (edges, _) = parse_edge_list(&path).expect("readable amazon0505 edge list");
        let table = ExactStats::from_counts(0, edges.len() as u64, 0, 0);
        let (kappa_ref, t_ref) = (0.162, 3_951_000.0);
        let label = TrialLabel::new("amazon0505", OrderingKind::RandomPermutation);
        let mut dk = Vec::new();
        let mut dt = Vec::new();
        for i in 0..DESK_SEEDS as u64 {
            let stream = order_stream(&edges, OrderingKind::RandomPermutation, derive_seed(i, 0));
            let r = harness::run_trial(&label, &stream, EstimatorConfig::symmetric(DESK_SLOTS, derive_seed(i, 1)), &table).unwrap();
            dk.push((r.kappa_est - kappa_ref).abs());
            dt.push((r.t_est - t_ref).abs() / t_ref);
        }
        let (mk, mt) = (median(&dk), median(&dt));
        ok &= mk <= 0.01 && mt <= 0.10;
        detail += &format!("; amazon0505 median |dk|={mk:.5}, median rel T={:.2}%", 100.0 * mt);
    }
    report(5, ok, detail);
}

#[test]
fn criterion_06_wedge_estimate() {
    let (_, _, wedges) = medians(random_trials());
    report(6, wedges <= 0.10, format!("median rel W={:.2}%", 100.0 * wedges));
}

#[test]
fn criterion_07_ordering_robustness() {
    let mut ok = true;
    let mut rows = Vec::new();
    for ordering in OrderingKind::ALL {
        let results = if ordering == OrderingKind::RandomPermutation {
            random_trials().to_vec()
        } else {
            desk_trials(ordering, 7)
        };
        let (kappa, tri, _) = medians(&results);
        ok &= kappa <= 0.01 && tri <= 0.10;
        rows.push(format!("{ordering}: |dk|={kappa:.5} rel T={:.2}%", 100.0 * tri));
    }
    report(7, ok, rows.join(", "));
}

#[test]
fn criterion_08_convergence() {
    let d = desk();
    let rows = harness::run_convergence("clustered", &d.edges, &d.exact, &[100, 1000, 10_000], 20, 8, jobs()).unwrap();
    let errs: Vec<f64> = rows.iter().map(|r| r.mean_abs_err_kappa).collect();
    report(
        8,
        errs[2] < errs[1] && errs[1] < errs[0],
        format!("mean |dk| at s=100,1000,10000: {:.5}, {:.5}, {:.5}", errs[0], errs[1], errs[2]),
    );
}

#[test]
fn criterion_09_tracking() {
    let edges = synth::clustered(ClusteredParams::scaled_to(100_000), 9).unwrap();
    let stream = order_stream(&edges, OrderingKind::RandomPermutation, 9);
    let series = harness::run_tracking(&stream, EstimatorConfig::symmetric(10_000, 9), 10_000, true).unwrap();
    let live: Vec<_> = series.checkpoints.iter().filter(|c| !c.warmup).collect();
    let close = live
        .iter()
        .filter(|c| (c.kappa_est - c.kappa_exact.expect("exact requested")).abs() <= 0.02)
        .count();
    let ok = !live.is_empty() && close as f64 >= 0.8 * live.len() as f64;
    let worst = live
        .iter()
        .map(|c| (c.kappa_est - c.kappa_exact.unwrap()).abs())
        .fold(0.0, f64::max);
    report(
        9,
        ok,
        format!("m={}, {close} of {} post-warmup checkpoints within 0.02, worst {worst:.4}", stream.len(), live.len()),
    );
}

#[test]
fn criterion_10_reservoir_reuse_advantage() {
    let d = desk();
    let rows = harness::compare_singlebit(&d.edges, &d.exact, 2 * DESK_SLOTS, &[1_000, 2_000, 5_000], DESK_SEEDS, 10, jobs()).unwrap();
    let st = rows[0].median_abs_err_kappa;
    let best_sb = rows[1..].iter().map(|r| r.median_abs_err_kappa).fold(f64::INFINITY, f64::min);
    let detail = rows
        .iter()
        .map(|r| format!("{} {}x{}: {:.4}", r.method, r.s_e, r.instances, r.median_abs_err_kappa))
        .collect::<Vec<_>>()
        .join(", ");
    report(10, st <= 0.5 * best_sb, detail);
}

#[test]
fn criterion_11_throughput_and_churn() {
    let edges = synth::clustered(ClusteredParams::scaled_to(1_000_000), 11).unwrap();
    let m = edges.len() as f64;
    let mut replacements = Vec::new();
    let mut slowest: f64 = 0.0;
    for i in 0..DESK_SEEDS as u64 {
        let stream = order_stream(&edges, OrderingKind::RandomPermutation, derive_seed(i, 0));
        let mut est = StreamingTriangles::new(EstimatorConfig::symmetric(DESK_SLOTS, derive_seed(i, 1))).unwrap();
        let start = Instant::now();
        est.process(stream.edges());
        slowest = slowest.max(start.elapsed().as_secs_f64());
        replacements.push(est.edge_reservoir().replacements() as f64);
    }
    let mean_replacements = replacements.iter().sum::<f64>() / replacements.len() as f64;
    let target = DESK_SLOTS as f64 * m.ln();
    let diff = (mean_replacements - target).abs() / target;
    report(
        11,
        m >= 900_000.0 && slowest < 60.0 && diff <= 0.10,
        format!(
            "m={m}, slowest run {slowest:.2}s, mean replacements {mean_replacements:.0} vs s_e ln m {target:.0} ({:.2}%)",
            100.0 * diff
        ),
    );
}
