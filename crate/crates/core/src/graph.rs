// SPDX-License-Identifier: Apache-2.0

//! Simple undirected graphs, wedges, and exact counting oracles.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Vertex label as it appears in the input. Labels need not be contiguous.
pub type VertexId = u64;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Normalizes `(u, v)` into canonical order. Self-loops are rejected.
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { u, v }),
            std::cmp::Ordering::Greater => Ok(Edge { u: v, v: u }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(u)),
        }
    }

    /// Smaller endpoint.
    pub fn u(&self) -> VertexId {
        self.u
    }

    /// Larger endpoint.
    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    /// The single vertex shared with `other`. Identical and disjoint edges
    /// share no single vertex.
    pub fn shared_vertex(&self, other: &Edge) -> Option<VertexId> {
        if self == other {
            return None;
        }
        if other.contains(self.u) {
            Some(self.u)
        } else if other.contains(self.v) {
            Some(self.v)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

/// A path of length two: `a - center - b`, with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wedge {
    center: VertexId,
    a: VertexId,
    b: VertexId,
}

impl Wedge {
    /// Builds the wedge `a - center - b`. Returns `None` when the three
    /// labels are not pairwise distinct.
    pub fn new(center: VertexId, a: VertexId, b: VertexId) -> Option<Self> {
        if center == a || center == b || a == b {
            return None;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Some(Wedge { center, a, b })
    }

    /// The wedge formed by two edges, if they share exactly one vertex.
    pub fn from_edges(e1: &Edge, e2: &Edge) -> Option<Self> {
        let center = e1.shared_vertex(e2)?;
        let a = e1.other(center)?;
        let b = e2.other(center)?;
        Wedge::new(center, a, b)
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    /// The two non-center vertices, smaller first.
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    /// The edge `{a, b}` that would close this wedge into a triangle.
    pub fn closing_edge(&self) -> Edge {
        Edge {
            u: self.a,
            v: self.b,
        }
    }

    pub fn closed_by(&self, e: &Edge) -> bool {
        self.closing_edge() == *e
    }

    /// The two edges that make up the wedge.
    pub fn edges(&self) -> (Edge, Edge) {
        // Distinct labels are guaranteed by construction.
        let e1 = Edge::new(self.center, self.a).expect("distinct labels");
        let e2 = Edge::new(self.center, self.b).expect("distinct labels");
        (e1, e2)
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.a, self.center, self.b)
    }
}

/// Exact global statistics of a simple graph.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ExactStats {
    pub n: u64,
    pub m: u64,
    pub wedges: u64,
    pub triangles: u64,
    pub kappa: f64,
}

impl ExactStats {
    /// Fills in `kappa = 3T/W`, taken as 0 for a wedge-free graph.
    pub fn from_counts(n: u64, m: u64, wedges: u64, triangles: u64) -> Self {
        let kappa = if wedges == 0 {
            0.0
        } else {
            3.0 * triangles as f64 / wedges as f64
        };
        ExactStats {
            n,
            m,
            wedges,
            triangles,
            kappa,
        }
    }
}

impl fmt::Display for ExactStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} W={} T={} kappa={:.6}",
            self.n, self.m, self.wedges, self.triangles, self.kappa
        )
    }
}

/// Compressed sparse adjacency over dense vertex indices.
///
/// Vertex labels are kept sorted in `labels`; dense index `i` stands for
/// `labels[i]`. Every neighbor list is sorted and duplicate free.
#[derive(Clone, Debug, Default)]
pub struct AdjacencyGraph {
    labels: Vec<VertexId>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl AdjacencyGraph {
    /// Builds the graph from an edge collection. Repeated edges collapse.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut labels: Vec<VertexId> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        labels.sort_unstable();
        labels.dedup();
        assert!(labels.len() <= u32::MAX as usize, "too many vertices");

        let index: HashMap<VertexId, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();

        let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(edges.len() * 2);
        for e in &edges {
            let (a, b) = (index[&e.u], index[&e.v]);
            arcs.push((a, b));
            arcs.push((b, a));
        }
        arcs.sort_unstable();
        arcs.dedup();

        let n = labels.len();
        let mut offsets = vec![0usize; n + 1];
        for &(a, _) in &arcs {
            offsets[a as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = arcs.into_iter().map(|(_, b)| b).collect();

        AdjacencyGraph {
            labels,
            offsets,
            neighbors,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Vertex labels in ascending order.
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.index_of(v).map_or(0, |i| self.dense_degree(i))
    }

    /// Neighbors of `v` in ascending label order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let list = self.index_of(v).map_or(&[][..], |i| self.dense_neighbors(i));
        list.iter().map(|&j| self.labels[j as usize])
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.dense_neighbors(i).binary_search(&(j as u32)).is_ok(),
            _ => false,
        }
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.dense_neighbors(i)
                .iter()
                .filter(move |&&j| j as usize > i)
                .map(move |&j| Edge {
                    u: self.labels[i],
                    v: self.labels[j as usize],
                })
        })
    }

    pub(crate) fn dense_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub(crate) fn dense_neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `W = sum_v C(d_v, 2)`.
    pub fn wedge_count(&self) -> u64 {
        (0..self.vertex_count())
            .map(|i| {
                let d = self.dense_degree(i) as u64;
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Calls `f` once per triangle with its three vertex labels.
    ///
    /// Each triangle is found at its lowest vertex in (degree, index) rank,
    /// by intersecting forward neighbor lists.
    pub fn for_each_triangle<F>(&self, mut f: F)
    where
        F: FnMut(VertexId, VertexId, VertexId),
    {
        let n = self.vertex_count();
        let rank_key = |i: usize| (self.dense_degree(i), i);
        let mut forward_offsets = vec![0usize; n + 1];
        let mut forward = Vec::with_capacity(self.edge_count());
        for i in 0..n {
            let ki = rank_key(i);
            forward.extend(
                self.dense_neighbors(i)
                    .iter()
                    .copied()
                    .filter(|&j| rank_key(j as usize) > ki),
            );
            forward_offsets[i + 1] = forward.len();
        }
        let out = |i: usize| &forward[forward_offsets[i]..forward_offsets[i + 1]];

        for u in 0..n {
            let out_u = out(u);
            for &v in out_u {
                let out_v = out(v as usize);
                let (mut p, mut q) = (0, 0);
                while p < out_u.len() && q < out_v.len() {
                    match out_u[p].cmp(&out_v[q]) {
                        std::cmp::Ordering::Less => p += 1,
                        std::cmp::Ordering::Greater => q += 1,
                        std::cmp::Ordering::Equal => {
                            f(
                                self.labels[u],
                                self.labels[v as usize],
                                self.labels[out_u[p] as usize],
                            );
                            p += 1;
                            q += 1;
                        }
                    }
                }
            }
        }
    }

    pub fn triangle_count(&self) -> u64 {
        let mut count = 0u64;
        self.for_each_triangle(|_, _, _| count += 1);
        count
    }
}

/// Exact statistics by degree-ordered adjacency intersection.
pub fn exact_count(g: &AdjacencyGraph) -> ExactStats {
    ExactStats::from_counts(
        g.vertex_count() as u64,
        g.edge_count() as u64,
        g.wedge_count(),
        g.triangle_count(),
    )
}

/// Exact statistics by enumerating every vertex triple. Cubic in `n`; meant
/// as an independent check of [`exact_count`] on small graphs.
pub fn brute_force_count(g: &AdjacencyGraph) -> ExactStats {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for i in 0..n {
        for &j in g.dense_neighbors(i) {
            adj[i * n + j as usize] = true;
        }
    }
    let (mut wedges, mut triangles) = (0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let present = adj[i * n + j] as u64 + adj[i * n + k] as u64 + adj[j * n + k] as u64;
                match present {
                    3 => {
                        triangles += 1;
                        wedges += 3;
                    }
                    2 => wedges += 1,
                    _ => {}
                }
            }
        }
    }
    let m = (0..n * n).filter(|&x| adj[x]).count() as u64 / 2;
    ExactStats::from_counts(n as u64, m, wedges, triangles)
}

/// For each triangle in the stream, the wedge made of its two earliest
/// edges, paired with the 1-based arrival time of the later of those two.
///
/// The stream must hold distinct edges. Output is sorted by time.
pub fn future_closed_wedges(stream: &[Edge]) -> Vec<(Wedge, usize)> {
    let arrival: HashMap<Edge, usize> = stream.iter().enumerate().map(|(i, &e)| (e, i + 1)).collect();
    let g = AdjacencyGraph::from_edges(stream.iter().copied());
    let mut out = Vec::new();
    g.for_each_triangle(|x, y, z| {
        let mut sides = [
            Edge::new(x, y).expect("simple graph"),
            Edge::new(x, z).expect("simple graph"),
            Edge::new(y, z).expect("simple graph"),
        ];
        sides.sort_by_key(|e| arrival[e]);
        let wedge = Wedge::from_edges(&sides[0], &sides[1]).expect("triangle sides share a vertex");
        out.push((wedge, arrival[&sides[1]]));
    });
    out.sort_unstable_by_key(|&(w, t)| (t, w));
    out
}
