// SPDX-License-Identifier: Apache-2.0

//! Built-in graphs: tiny fixtures and seeded random generators.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId};
use crate::rng::seeded;

fn edge(u: VertexId, v: VertexId) -> Edge {
    Edge::new(u, v).expect("generators never emit self-loops")
}

/// Complete graph on `0..n`.
pub fn complete(n: u64) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| edge(u, v))).collect()
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: u64) -> Vec<Edge> {
    (1..n).map(|v| edge(v - 1, v)).collect()
}

/// Cycle on `0..n`, `n >= 3`.
pub fn cycle(n: u64) -> Vec<Edge> {
    assert!(n >= 3, "a cycle needs at least three vertices");
    (0..n).map(|v| edge(v, (v + 1) % n)).collect()
}

/// Star with hub `0` and leaves `1..=leaves`.
pub fn star(leaves: u64) -> Vec<Edge> {
    (1..=leaves).map(|v| edge(0, v)).collect()
}

/// Random recursive tree on `0..n`: vertex `v` attaches to a uniform
/// earlier vertex.
pub fn random_tree(n: u64, seed: u64) -> Vec<Edge> {
    let mut rng = seeded(seed);
    (1..n).map(|v| edge(rng.random_range(0..v), v)).collect()
}

/// G(n, p) over `0..n`; visits every pair, so keep `n` in the thousands.
pub fn erdos_renyi(n: u64, p: f64, seed: u64) -> Vec<Edge> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                out.push(edge(u, v));
            }
        }
    }
    out
}

/// Dense communities joined by sparse random edges.
///
/// Triangles come almost entirely from inside communities, so the
/// transitivity is tuned with `p_in` and the share of inter-community
/// edges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusteredParams {
    pub communities: u64,
    pub community_size: u64,
    /// Edge probability inside a community.
    pub p_in: f64,
    /// Uniform random edges between distinct communities.
    pub inter_edges: u64,
}

impl ClusteredParams {
    /// About 2 x 10^5 edges with transitivity around 0.25.
    pub const DESK_SCALE: ClusteredParams = ClusteredParams {
        communities: 2_100,
        community_size: 20,
        p_in: 0.4,
        inter_edges: 40_000,
    };

    /// Same shape as [`Self::DESK_SCALE`], scaled to roughly `edges` edges.
    pub fn scaled_to(edges: u64) -> ClusteredParams {
        let base = Self::DESK_SCALE;
        let base_edges = base.expected_edges();
        let factor = edges as f64 / base_edges;
        ClusteredParams {
            communities: ((base.communities as f64 * factor).round() as u64).max(1),
            inter_edges: (base.inter_edges as f64 * factor).round() as u64,
            ..base
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.communities * self.community_size
    }

    pub fn expected_edges(&self) -> f64 {
        let pairs = (self.community_size * self.community_size.saturating_sub(1) / 2) as f64;
        self.communities as f64 * pairs * self.p_in + self.inter_edges as f64
    }
}

pub fn clustered(params: ClusteredParams, seed: u64) -> Result<Vec<Edge>> {
    let ClusteredParams {
        communities,
        community_size,
        p_in,
        inter_edges,
    } = params;
    if !(0.0..=1.0).contains(&p_in) {
        return Err(Error::Config(format!("p_in must lie in [0, 1], got {p_in}")));
    }
    let n = params.vertex_count();
    let max_inter = n * n.saturating_sub(community_size) / 2;
    if inter_edges > max_inter / 2 {
        return Err(Error::Config(format!(
            "{inter_edges} inter-community edges requested, at most {} allowed",
            max_inter / 2
        )));
    }

    let mut rng = seeded(seed);
    let mut out = Vec::new();
    for c in 0..communities {
        let base = c * community_size;
        for i in 0..community_size {
            for j in i + 1..community_size {
                if rng.random_bool(p_in) {
                    out.push(edge(base + i, base + j));
                }
            }
        }
    }
    let mut inter = HashSet::with_capacity(inter_edges as usize);
    while (inter.len() as u64) < inter_edges {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u / community_size != v / community_size {
            let e = edge(u, v);
            if inter.insert(e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 7] = ["k3", "k4", "path", "star", "tree", "er", "clustered"];

/// Looks up a built-in graph by name.
///
/// `k3`, `k4`, `path` (10 vertices), `star` (10 leaves), `tree` (1000
/// vertices), `er` (G(200, 0.05)) and `clustered` ([`ClusteredParams::DESK_SCALE`]).
pub fn builtin(name: &str, seed: u64) -> Result<Vec<Edge>> {
    match name {
        "k3" => Ok(complete(3)),
        "k4" => Ok(complete(4)),
        "path" => Ok(path(10)),
        "star" => Ok(star(10)),
        "tree" => Ok(random_tree(1000, seed)),
        "er" => Ok(erdos_renyi(200, 0.05, seed)),
        "clustered" => clustered(ClusteredParams::DESK_SCALE, seed),
        other => Err(Error::Config(format!(
            "unknown built-in graph `{other}` (expected one of {})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}
