// SPDX-License-Identifier: Apache-2.0

//! Fixed array of independently resampled edge slots.
//!
//! At time `t` every slot is replaced by the arriving edge with probability
//! `1/t`, independently of the others, so each slot holds a uniform sample
//! of the stream prefix and distinct slots are independent. The reservoir
//! is a multiset: several slots may hold the same edge.
//!
//! Wedges are counted over unordered slot pairs. Two slots form a wedge
//! when their edges share exactly one vertex; slots holding the same edge
//! never do. With `inc(v)` the number of slots touching `v` and `mult(e)`
//! the number of slots holding `e`,
//!
//! ```text
//! tot_wedges = sum_v C(inc(v), 2) - 2 * sum_e C(mult(e), 2)
//! ```
//!
//! because two slots holding the same edge meet at both of its endpoints.

use std::collections::HashMap;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::graph::{Edge, VertexId};

/// Chooses the slots an arriving edge overwrites at time `t`.
///
/// Draws the Binomial(`n`, `1/t`) number of replaced slots and then that
/// many distinct slots uniformly, which has the same law as `n` independent
/// coin flips.
pub(crate) fn sample_replaced_slots<R: Rng + ?Sized>(rng: &mut R, n: usize, t: u64) -> Vec<usize> {
    debug_assert!(t >= 1);
    if t == 1 {
        return (0..n).collect();
    }
    sample_slots(rng, n, 1.0 / t as f64)
}

/// Each of `n` slots independently with probability `p`.
pub(crate) fn sample_slots<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Vec<usize> {
    if n == 0 || p <= 0.0 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..n).collect();
    }
    let k = Binomial::new(n as u64, p).expect("valid binomial").sample(rng) as usize;
    match k {
        0 => Vec::new(),
        k if k == n => (0..n).collect(),
        k => index::sample(rng, n, k).into_vec(),
    }
}

/// Positions of a slot inside the three index lists it belongs to.
#[derive(Clone, Copy, Debug, Default)]
struct SlotLinks {
    in_u: u32,
    in_v: u32,
    in_holders: u32,
}

#[derive(Clone, Debug)]
pub struct EdgeReservoir {
    slots: Vec<Option<Edge>>,
    links: Vec<SlotLinks>,
    by_vertex: HashMap<VertexId, Vec<u32>>,
    holders: HashMap<Edge, Vec<u32>>,
    /// `sum_v C(inc(v), 2)`
    incident_pairs: u64,
    /// `sum_e C(mult(e), 2)`
    dup_pairs: u64,
    replacements: u64,
}

fn unlink(list: &mut Vec<u32>, at: u32) -> Option<u32> {
    let at = at as usize;
    list.swap_remove(at);
    list.get(at).copied()
}

impl EdgeReservoir {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity <= u32::MAX as usize, "reservoir too large");
        EdgeReservoir {
            slots: vec![None; capacity],
            links: vec![SlotLinks::default(); capacity],
            by_vertex: HashMap::new(),
            holders: HashMap::new(),
            incident_pairs: 0,
            dup_pairs: 0,
            replacements: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<Edge>] {
        &self.slots
    }

    /// Unordered slot pairs currently forming a wedge.
    pub fn tot_wedges(&self) -> u64 {
        self.incident_pairs - 2 * self.dup_pairs
    }

    /// Unordered slot pairs currently holding the same edge.
    pub fn dup_pairs(&self) -> u64 {
        self.dup_pairs
    }

    /// Slot overwrites performed so far.
    pub fn replacements(&self) -> u64 {
        self.replacements
    }

    /// Number of slots with an edge touching `v`.
    pub fn incidence(&self, v: VertexId) -> usize {
        self.by_vertex.get(&v).map_or(0, Vec::len)
    }

    pub fn slots_touching(&self, v: VertexId) -> &[u32] {
        self.by_vertex.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn slots_holding(&self, e: &Edge) -> &[u32] {
        self.holders.get(e).map_or(&[], Vec::as_slice)
    }

    pub fn multiplicity(&self, e: &Edge) -> usize {
        self.slots_holding(e).len()
    }

    /// Overwrites `slot` with `edge`.
    pub fn replace(&mut self, slot: usize, edge: Edge) {
        self.replacements += 1;
        if let Some(old) = self.slots[slot] {
            self.detach(slot, old);
        }
        self.attach(slot, edge);
    }

    /// Runs one reservoir step for the edge arriving at time `t` and returns
    /// the overwritten slots.
    pub fn observe<R: Rng + ?Sized>(&mut self, rng: &mut R, edge: Edge, t: u64) -> Vec<usize> {
        let replaced = sample_replaced_slots(rng, self.capacity(), t);
        for &slot in &replaced {
            self.replace(slot, edge);
        }
        replaced
    }

    /// Slot pairs forming a wedge with at least one member holding `edge`.
    ///
    /// Both members of such a pair cannot hold `edge`, and no other edge
    /// touches both endpoints, so this is `mult * (inc(u) + inc(v) - 2 mult)`.
    pub fn wedges_through(&self, edge: &Edge) -> u64 {
        let k = self.multiplicity(edge) as u64;
        let (u, v) = edge.endpoints();
        k * (self.incidence(u) as u64 + self.incidence(v) as u64 - 2 * k)
    }

    /// Slots whose edge shares exactly one endpoint with `edge`.
    pub fn adjacent_slots(&self, edge: &Edge) -> Vec<u32> {
        let (u, v) = edge.endpoints();
        self.slots_touching(u)
            .iter()
            .chain(self.slots_touching(v))
            .copied()
            .filter(|&s| self.slots[s as usize] != Some(*edge))
            .collect()
    }

    fn attach(&mut self, slot: usize, edge: Edge) {
        let s = slot as u32;
        let (u, v) = edge.endpoints();

        let list = self.by_vertex.entry(u).or_default();
        self.incident_pairs += list.len() as u64;
        self.links[slot].in_u = list.len() as u32;
        list.push(s);

        let list = self.by_vertex.entry(v).or_default();
        self.incident_pairs += list.len() as u64;
        self.links[slot].in_v = list.len() as u32;
        list.push(s);

        let list = self.holders.entry(edge).or_default();
        self.dup_pairs += list.len() as u64;
        self.links[slot].in_holders = list.len() as u32;
        list.push(s);

        self.slots[slot] = Some(edge);
    }

    fn detach(&mut self, slot: usize, edge: Edge) {
        let links = self.links[slot];
        let (u, v) = edge.endpoints();
        self.detach_vertex(u, links.in_u);
        self.detach_vertex(v, links.in_v);

        let list = self.holders.get_mut(&edge).expect("held edge is indexed");
        if let Some(moved) = unlink(list, links.in_holders) {
            self.links[moved as usize].in_holders = links.in_holders;
        }
        self.dup_pairs -= list.len() as u64;
        if list.is_empty() {
            self.holders.remove(&edge);
        }
        self.slots[slot] = None;
    }

    fn detach_vertex(&mut self, x: VertexId, at: u32) {
        let list = self.by_vertex.get_mut(&x).expect("touched vertex is indexed");
        if let Some(moved) = unlink(list, at) {
            let moved_edge = self.slots[moved as usize].expect("indexed slot is occupied");
            let links = &mut self.links[moved as usize];
            if moved_edge.u() == x {
                links.in_u = at;
            } else {
                links.in_v = at;
            }
        }
        self.incident_pairs -= list.len() as u64;
        if list.is_empty() {
            self.by_vertex.remove(&x);
        }
    }
}
