// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the benchmarks.

use tristream::stream::order_stream;
use tristream::synth::{self, ClusteredParams};
use tristream::{Edge, EdgeStream, OrderingKind};

/// Clustered graph with about `edges` edges.
pub fn clustered_edges(edges: u64) -> Vec<Edge> {
    synth::clustered(ClusteredParams::scaled_to(edges), 1).expect("scaled params are valid")
}

/// Random ordering of [`clustered_edges`].
pub fn clustered_stream(edges: u64) -> EdgeStream {
    order_stream(&clustered_edges(edges), OrderingKind::RandomPermutation, 2)
}
