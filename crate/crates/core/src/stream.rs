// SPDX-License-Identifier: Apache-2.0

//! Edge-list parsing, stream orderings, and stream files.
//!
//! Both edge lists and stream files are ASCII text with one `u v` pair of
//! decimal labels per line. Lines starting with `#` are comments. Readers
//! accept any run of ASCII whitespace between the two labels; writers emit a
//! single space and `\n` line ends.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Edge, VertexId};
use crate::rng::seeded;

/// A sequence of distinct edges. Position `t - 1` holds the edge that
/// arrives at time `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeStream {
    edges: Vec<Edge>,
}

impl EdgeStream {
    /// Wraps `edges`, rejecting repeats.
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if !seen.insert(*e) {
                return Err(Error::DuplicateEdge {
                    line: i + 1,
                    u: e.u(),
                    v: e.v(),
                });
            }
        }
        Ok(EdgeStream { edges })
    }

    pub(crate) fn from_distinct(edges: Vec<Edge>) -> Self {
        debug_assert_eq!(edges.iter().collect::<HashSet<_>>().len(), edges.len());
        EdgeStream { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }
}

impl<'a> IntoIterator for &'a EdgeStream {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// How an edge set is turned into a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderingKind {
    /// Uniformly random permutation.
    RandomPermutation,
    /// BFS tree edges from a random root, then the rest shuffled.
    BfsThenRest,
    /// DFS tree edges from a random root in discovery order, then the rest
    /// shuffled.
    Dfs,
    /// Vertices by increasing degree, each listing its not yet emitted
    /// incident edges.
    DegreeSortedAsc,
    /// Vertices by decreasing degree, each listing its not yet emitted
    /// incident edges.
    DegreeSortedDesc,
}

impl OrderingKind {
    pub const ALL: [OrderingKind; 5] = [
        OrderingKind::RandomPermutation,
        OrderingKind::BfsThenRest,
        OrderingKind::Dfs,
        OrderingKind::DegreeSortedAsc,
        OrderingKind::DegreeSortedDesc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OrderingKind::RandomPermutation => "random",
            OrderingKind::BfsThenRest => "bfs",
            OrderingKind::Dfs => "dfs",
            OrderingKind::DegreeSortedAsc => "deg-asc",
            OrderingKind::DegreeSortedDesc => "deg-desc",
        }
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderingKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown ordering `{s}` (expected random|bfs|dfs|deg-asc|deg-desc)")))
    }
}

impl serde::Serialize for OrderingKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Lines dropped while loading an edge list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseWarnings {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl ParseWarnings {
    pub fn total(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

impl fmt::Display for ParseWarnings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dropped {} self-loop(s) and {} duplicate edge(s)",
            self.self_loops, self.duplicates
        )
    }
}

/// Parses one line. `Ok(None)` for blank and comment lines.
fn parse_line(line: &str, lineno: usize) -> Result<Option<(VertexId, VertexId)>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let mut tokens = trimmed.split_ascii_whitespace();
    let mut label = |what: &str| -> Result<VertexId> {
        let tok = tokens.next().ok_or_else(|| Error::Parse {
            line: lineno,
            reason: format!("missing {what} vertex label"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            reason: format!("`{tok}` is not a non-negative integer label"),
        })
    };
    let u = label("first")?;
    let v = label("second")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse {
            line: lineno,
            reason: format!("unexpected trailing token `{extra}`"),
        });
    }
    Ok(Some((u, v)))
}

/// Single-pass reader over edge-list text.
///
/// Self-loops are skipped and counted. With `dedup` on, repeats of an
/// earlier edge are skipped and counted too; this keeps a set of every edge
/// seen so far.
pub struct EdgeReader<R> {
    lines: std::io::Lines<R>,
    lineno: usize,
    seen: Option<HashSet<Edge>>,
    warnings: ParseWarnings,
}

impl<R: BufRead> EdgeReader<R> {
    pub fn new(reader: R, dedup: bool) -> Self {
        EdgeReader {
            lines: reader.lines(),
            lineno: 0,
            seen: dedup.then(HashSet::new),
            warnings: ParseWarnings::default(),
        }
    }

    pub fn warnings(&self) -> ParseWarnings {
        self.warnings
    }

    /// Line number of the most recently read line.
    pub fn line(&self) -> usize {
        self.lineno
    }
}

impl<R: BufRead> Iterator for EdgeReader<R> {
    type Item = Result<Edge>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(err) => return Some(Err(err.into())),
            };
            self.lineno += 1;
            let (u, v) = match parse_line(&line, self.lineno) {
                Ok(Some(pair)) => pair,
                Ok(None) => continue,
                Err(err) => return Some(Err(err)),
            };
            let Ok(edge) = Edge::new(u, v) else {
                self.warnings.self_loops += 1;
                continue;
            };
            if let Some(seen) = &mut self.seen {
                if !seen.insert(edge) {
                    self.warnings.duplicates += 1;
                    continue;
                }
            }
            return Some(Ok(edge));
        }
    }
}

/// Reads a deduplicated edge set from edge-list text, in first-seen order.
pub fn parse_edge_list_from<R: BufRead>(reader: R) -> Result<(Vec<Edge>, ParseWarnings)> {
    let mut edges = EdgeReader::new(reader, true);
    let collected = edges.by_ref().collect::<Result<Vec<_>>>()?;
    Ok((collected, edges.warnings()))
}

/// Reads a deduplicated edge set from an edge-list file.
pub fn parse_edge_list(path: impl AsRef<Path>) -> Result<(Vec<Edge>, ParseWarnings)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    parse_edge_list_from(BufReader::new(file))
}

/// Orders an edge set into a stream. Deterministic in `(edges, kind, seed)`.
///
/// Traversal orderings start at a uniformly random vertex; when a component
/// is exhausted they restart from the lowest-labelled unvisited vertex.
/// Degree orderings break ties by label, smaller first.
pub fn order_stream(edges: &[Edge], kind: OrderingKind, seed: u64) -> EdgeStream {
    let mut rng = seeded(seed);
    let g = AdjacencyGraph::from_edges(edges.iter().copied());
    let ordered = match kind {
        OrderingKind::RandomPermutation => {
            let mut all: Vec<Edge> = g.edges().collect();
            all.shuffle(&mut rng);
            all
        }
        OrderingKind::BfsThenRest => {
            let tree = traversal_tree(&g, &mut rng, bfs_component);
            tree_then_rest(&g, tree, &mut rng)
        }
        OrderingKind::Dfs => {
            let tree = traversal_tree(&g, &mut rng, dfs_component);
            tree_then_rest(&g, tree, &mut rng)
        }
        OrderingKind::DegreeSortedAsc => degree_sorted(&g, false),
        OrderingKind::DegreeSortedDesc => degree_sorted(&g, true),
    };
    EdgeStream::from_distinct(ordered)
}

/// Dense-index edge as emitted by a traversal.
type TreeEdge = (u32, u32);

fn traversal_tree<F>(g: &AdjacencyGraph, rng: &mut impl Rng, mut component: F) -> Vec<TreeEdge>
where
    F: FnMut(&AdjacencyGraph, usize, &mut [bool], &mut Vec<TreeEdge>),
{
    let n = g.vertex_count();
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return tree;
    }
    let mut visited = vec![false; n];
    component(g, rng.random_range(0..n), &mut visited, &mut tree);
    for root in 0..n {
        if !visited[root] {
            component(g, root, &mut visited, &mut tree);
        }
    }
    tree
}

fn bfs_component(g: &AdjacencyGraph, root: usize, visited: &mut [bool], tree: &mut Vec<TreeEdge>) {
    let mut queue = VecDeque::from([root]);
    visited[root] = true;
    while let Some(u) = queue.pop_front() {
        for &w in g.dense_neighbors(u) {
            if !visited[w as usize] {
                visited[w as usize] = true;
                tree.push((u as u32, w));
                queue.push_back(w as usize);
            }
        }
    }
}

fn dfs_component(g: &AdjacencyGraph, root: usize, visited: &mut [bool], tree: &mut Vec<TreeEdge>) {
    // (vertex, next neighbor position)
    let mut stack = vec![(root, 0usize)];
    visited[root] = true;
    while let Some(top) = stack.last_mut() {
        let (u, pos) = *top;
        let nbrs = g.dense_neighbors(u);
        match nbrs[pos..].iter().position(|&w| !visited[w as usize]) {
            Some(offset) => {
                let w = nbrs[pos + offset] as usize;
                top.1 = pos + offset + 1;
                visited[w] = true;
                tree.push((u as u32, w as u32));
                stack.push((w, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
}

fn dense_edge(g: &AdjacencyGraph, (a, b): TreeEdge) -> Edge {
    let labels = g.labels();
    Edge::new(labels[a as usize], labels[b as usize]).expect("simple graph")
}

fn tree_then_rest(g: &AdjacencyGraph, tree: Vec<TreeEdge>, rng: &mut impl Rng) -> Vec<Edge> {
    let mut out: Vec<Edge> = tree.into_iter().map(|te| dense_edge(g, te)).collect();
    let in_tree: HashSet<Edge> = out.iter().copied().collect();
    let mut rest: Vec<Edge> = g.edges().filter(|e| !in_tree.contains(e)).collect();
    rest.shuffle(rng);
    out.extend(rest);
    out
}

fn degree_sorted(g: &AdjacencyGraph, descending: bool) -> Vec<Edge> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    // Dense index order equals label order, so the index is the tie-breaker.
    if descending {
        order.sort_by_key(|&i| (std::cmp::Reverse(g.dense_degree(i)), i));
    } else {
        order.sort_by_key(|&i| (g.dense_degree(i), i));
    }
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(g.edge_count());
    for u in order {
        for &w in g.dense_neighbors(u) {
            if !done[w as usize] {
                out.push(dense_edge(g, (u as u32, w)));
            }
        }
        done[u] = true;
    }
    out
}

/// Writes one `u v` line per edge in stream order.
pub fn write_stream_to<W: Write>(stream: &EdgeStream, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    for e in stream {
        writeln!(w, "{} {}", e.u(), e.v())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_stream(stream: &EdgeStream, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::file(path, e))?;
    write_stream_to(stream, file).map_err(|err| match err {
        Error::Io(source) => Error::file(path, source),
        other => other,
    })
}

/// Reads a stream file. Unlike [`parse_edge_list`], self-loops and repeated
/// edges are errors: a stream file is expected to be valid as written.
pub fn read_stream_from<R: BufRead>(reader: R) -> Result<EdgeStream> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let Some((u, v)) = parse_line(&line, i + 1)? else {
            continue;
        };
        let e = Edge::new(u, v).map_err(|_| Error::Parse {
            line: i + 1,
            reason: format!("self-loop on vertex {u}"),
        })?;
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge { line: i + 1, u, v });
        }
        edges.push(e);
    }
    Ok(EdgeStream::from_distinct(edges))
}

pub fn read_stream(path: impl AsRef<Path>) -> Result<EdgeStream> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    read_stream_from(BufReader::new(file))
}
