// SPDX-License-Identifier: Apache-2.0

//! The one-bit estimator and its ensembles.
//!
//! An instance keeps `r` edge slots under the same `1/t` replacement rule as
//! the streaming estimator. `W_t` is the set of slot pairs forming a wedge
//! and `C_t` the subset whose closing edge has been seen since the pair was
//! formed. A pair's identity is the two slots together with the edges they
//! hold, so overwriting either slot drops the pair from `C_t`. After each
//! edge the instance outputs 1 iff a uniform member of `W_t` lies in `C_t`.
//!
//! Over the whole stream `C_m` is exactly the set of future-closed pairs of
//! `W_m`, and `E[b_m]` is close to `kappa / 3` once `r` is a large multiple
//! of `m / sqrt(T)`.
//!
//! [`SingleBit`] rebuilds `W_t` from scratch every step. [`IndexedSingleBit`]
//! keeps the same sets incrementally and is what the ensembles run.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Wedge};
use crate::harness::fan_out;
use crate::reservoir::{sample_replaced_slots, EdgeReservoir};
use crate::rng::{derive_seed, seeded, SeededRng};

/// Unordered slot pair, smaller slot first.
pub type SlotPair = (u32, u32);

/// Separate generators for slot replacement and output bits, so that the
/// reference and indexed implementations replay identical reservoirs.
fn rngs(seed: u64) -> (SeededRng, SeededRng) {
    (seeded(seed), seeded(derive_seed(seed, u64::MAX)))
}

fn check_slots(slots: usize) -> Result<()> {
    if slots == 0 {
        return Err(Error::Config("single-bit reservoir needs at least 1 slot".into()));
    }
    if slots > u32::MAX as usize {
        return Err(Error::Config("single-bit reservoir too large".into()));
    }
    Ok(())
}

/// Reference implementation: `W_t` recomputed over all slot pairs each step.
#[derive(Clone, Debug)]
pub struct SingleBit {
    slots: Vec<Option<Edge>>,
    wedges: Vec<SlotPair>,
    detected: HashSet<SlotPair>,
    t: u64,
    reservoir_rng: SeededRng,
    output_rng: SeededRng,
}

impl SingleBit {
    pub fn new(slots: usize, seed: u64) -> Result<Self> {
        check_slots(slots)?;
        let (reservoir_rng, output_rng) = rngs(seed);
        Ok(SingleBit {
            slots: vec![None; slots],
            wedges: Vec::new(),
            detected: HashSet::new(),
            t: 0,
            reservoir_rng,
            output_rng,
        })
    }

    pub fn slots(&self) -> &[Option<Edge>] {
        &self.slots
    }

    /// `W_t` as slot pairs, in lexicographic order.
    pub fn wedge_pairs(&self) -> &[SlotPair] {
        &self.wedges
    }

    /// `C_t` as slot pairs.
    pub fn detected_pairs(&self) -> &HashSet<SlotPair> {
        &self.detected
    }

    /// The wedge held by a slot pair, if it forms one.
    pub fn wedge_of(&self, (i, j): SlotPair) -> Option<Wedge> {
        let (a, b) = (self.slots[i as usize]?, self.slots[j as usize]?);
        Wedge::from_edges(&a, &b)
    }

    /// Processes the next stream edge and returns `b_t`.
    pub fn step(&mut self, edge: Edge) -> bool {
        self.t += 1;
        let replaced: HashSet<u32> = sample_replaced_slots(&mut self.reservoir_rng, self.slots.len(), self.t)
            .into_iter()
            .map(|s| s as u32)
            .collect();
        for &s in &replaced {
            self.slots[s as usize] = Some(edge);
        }

        let n = self.slots.len() as u32;
        self.wedges.clear();
        for i in 0..n {
            for j in i + 1..n {
                if self.wedge_of((i, j)).is_some() {
                    self.wedges.push((i, j));
                }
            }
        }

        let current: HashSet<SlotPair> = self.wedges.iter().copied().collect();
        let mut next: HashSet<SlotPair> = self
            .detected
            .iter()
            .copied()
            .filter(|p| !replaced.contains(&p.0) && !replaced.contains(&p.1) && current.contains(p))
            .collect();
        for &p in &self.wedges {
            if self.wedge_of(p).is_some_and(|w| w.closed_by(&edge)) {
                next.insert(p);
            }
        }
        self.detected = next;

        if self.wedges.is_empty() {
            return false;
        }
        let pick = self.wedges[self.output_rng.random_range(0..self.wedges.len())];
        self.detected.contains(&pick)
    }
}

/// Incremental implementation over an indexed [`EdgeReservoir`].
///
/// `b_t` is drawn as a Bernoulli(`|C_t| / |W_t|`) coin, which has the same
/// law as testing a uniform member of `W_t` for membership in `C_t`.
#[derive(Clone, Debug)]
pub struct IndexedSingleBit {
    edges: EdgeReservoir,
    /// Symmetric adjacency of `C_t`: slot -> partner slots.
    detected: HashMap<u32, Vec<u32>>,
    detected_count: u64,
    t: u64,
    reservoir_rng: SeededRng,
    output_rng: SeededRng,
}

impl IndexedSingleBit {
    pub fn new(slots: usize, seed: u64) -> Result<Self> {
        check_slots(slots)?;
        let (reservoir_rng, output_rng) = rngs(seed);
        Ok(IndexedSingleBit {
            edges: EdgeReservoir::new(slots),
            detected: HashMap::new(),
            detected_count: 0,
            t: 0,
            reservoir_rng,
            output_rng,
        })
    }

    pub fn edge_reservoir(&self) -> &EdgeReservoir {
        &self.edges
    }

    /// `|W_t|`
    pub fn wedge_count(&self) -> u64 {
        self.edges.tot_wedges()
    }

    /// `|C_t|`
    pub fn detected_count(&self) -> u64 {
        self.detected_count
    }

    /// `C_t` as sorted slot pairs.
    pub fn detected_pairs(&self) -> Vec<SlotPair> {
        let mut out: Vec<SlotPair> = self
            .detected
            .iter()
            .flat_map(|(&i, partners)| partners.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Updates the reservoir and `C_t` for the next edge without drawing
    /// an output bit.
    pub fn observe(&mut self, edge: Edge) {
        self.t += 1;
        let replaced = sample_replaced_slots(&mut self.reservoir_rng, self.edges.capacity(), self.t);
        for &slot in &replaced {
            self.forget(slot as u32);
            self.edges.replace(slot, edge);
        }

        // Pairs {u,w},{w,v} of the reservoir closed by {u,v}.
        let (u, v) = edge.endpoints();
        let mut found = Vec::new();
        for &i in self.edges.slots_touching(u) {
            let held = self.edges.slots()[i as usize].expect("indexed slot is occupied");
            let w = held.other(u).expect("slot touches u");
            if w == v {
                continue;
            }
            let partner = Edge::new(v, w).expect("w differs from v");
            for &j in self.edges.slots_holding(&partner) {
                found.push((i, j));
            }
        }
        for (i, j) in found {
            self.detected.entry(i).or_default().push(j);
            self.detected.entry(j).or_default().push(i);
            self.detected_count += 1;
        }
    }

    fn forget(&mut self, slot: u32) {
        let Some(partners) = self.detected.remove(&slot) else {
            return;
        };
        self.detected_count -= partners.len() as u64;
        for j in partners {
            let list = self.detected.get_mut(&j).expect("detected pairs are symmetric");
            let at = list.iter().position(|&x| x == slot).expect("detected pairs are symmetric");
            list.swap_remove(at);
            if list.is_empty() {
                self.detected.remove(&j);
            }
        }
    }

    /// Draws `b_t` for the current state.
    pub fn sample_bit(&mut self) -> bool {
        let total = self.wedge_count();
        if total == 0 {
            return false;
        }
        self.output_rng.random_range(0..total) < self.detected_count
    }

    /// Processes the next stream edge and returns `b_t`.
    pub fn step(&mut self, edge: Edge) -> bool {
        self.observe(edge);
        self.sample_bit()
    }

    /// Runs the whole stream and returns the final bit `b_m`.
    pub fn final_bit<'a, I>(&mut self, stream: I) -> bool
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        for &e in stream {
            self.observe(e);
        }
        self.sample_bit()
    }
}

/// Outcome of [`sb_ensemble`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleOutcome {
    pub instances: usize,
    pub ones: usize,
    /// Three times the fraction of final bits equal to 1.
    pub kappa_est: f64,
}

/// Runs `instances` independent one-bit estimators with `slots` edge slots
/// each over `stream`. Instance `i` is seeded with `derive_seed(seed, i)`.
pub fn sb_ensemble(stream: &[Edge], slots: usize, instances: usize, seed: u64, jobs: usize) -> Result<EnsembleOutcome> {
    check_slots(slots)?;
    if instances == 0 {
        return Err(Error::Config("ensemble needs at least one instance".into()));
    }
    let bits = fan_out(jobs, instances, |i| {
        let mut sb = IndexedSingleBit::new(slots, derive_seed(seed, i as u64)).expect("validated");
        sb.final_bit(stream)
    });
    let ones = bits.into_iter().filter(|&b| b).count();
    Ok(EnsembleOutcome {
        instances,
        ones,
        kappa_est: 3.0 * ones as f64 / instances as f64,
    })
}
