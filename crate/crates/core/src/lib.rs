// SPDX-License-Identifier: Apache-2.0

//! Single-pass estimation of the transitivity (global clustering
//! coefficient) and triangle count of a graph presented as a stream of
//! edges.
//!
//! The [`estimator`] module keeps an edge reservoir of i.i.d. uniform edge
//! slots and a wedge reservoir sampled from the wedges those slots form.
//! Each wedge carries a closure bit that flips when its closing edge shows
//! up later in the stream. The fraction of closed bits estimates a third of
//! the transitivity, and the number of wedges in the edge reservoir gives
//! the total wedge count through the birthday-paradox scaling
//! `t^2 / (s_e (s_e - 1))`.
//!
//! [`graph`] has the exact oracles, [`stream`] the edge-list I/O and stream
//! orderings, [`single_bit`] the one-bit reference estimator, and
//! [`harness`] the experiment drivers that compare them.

pub mod error;
pub mod estimator;
pub mod graph;
pub mod harness;
pub mod reservoir;
pub mod rng;
pub mod single_bit;
pub mod stream;
pub mod synth;

pub use error::{Error, Result};
pub use estimator::{EstimateSnapshot, EstimatorConfig, StreamingTriangles, WedgeReservoir};
pub use reservoir::EdgeReservoir;
pub use graph::{AdjacencyGraph, Edge, ExactStats, VertexId, Wedge};
pub use single_bit::{IndexedSingleBit, SingleBit};
pub use stream::{EdgeStream, OrderingKind};
