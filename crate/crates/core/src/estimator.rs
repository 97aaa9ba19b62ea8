// SPDX-License-Identifier: Apache-2.0

//! Edge-reservoir plus wedge-reservoir estimator of transitivity and
//! triangle count.
//!
//! Per arriving edge `e_t`:
//!
//! 1. every wedge slot whose closing pair is `e_t` gets its closed bit set;
//! 2. each edge slot is overwritten by `e_t` with probability `1/t`;
//! 3. if any edge slot changed, let `N_t` be the slot-pair wedges through a
//!    slot holding `e_t`. Each wedge slot is then overwritten, with
//!    probability `|N_t| / tot_wedges`, by a uniform member of `N_t` and its
//!    closed bit cleared.
//!
//! With `rho` the closed fraction of occupied wedge slots, the running
//! estimates are `kappa = 3 rho`, `W = t^2 tot_wedges / (s_e (s_e - 1))` and
//! `T = rho W`.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Wedge};
use crate::reservoir::{sample_slots, EdgeReservoir};
use crate::rng::{seeded, SeededRng};

/// Reservoir sizes and seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EstimatorConfig {
    /// Edge-reservoir slots, at least 2.
    pub edge_slots: usize,
    /// Wedge-reservoir slots, at least 1.
    pub wedge_slots: usize,
    pub seed: u64,
}

impl EstimatorConfig {
    pub const DEFAULT_SLOTS: usize = 20_000;

    pub fn new(edge_slots: usize, wedge_slots: usize, seed: u64) -> Self {
        EstimatorConfig {
            edge_slots,
            wedge_slots,
            seed,
        }
    }

    /// Equal edge and wedge reservoirs.
    pub fn symmetric(slots: usize, seed: u64) -> Self {
        Self::new(slots, slots, seed)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        EstimatorConfig { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.edge_slots < 2 {
            return Err(Error::Config(format!(
                "edge reservoir needs at least 2 slots, got {}",
                self.edge_slots
            )));
        }
        if self.wedge_slots < 1 {
            return Err(Error::Config("wedge reservoir needs at least 1 slot, got 0".into()));
        }
        if self.edge_slots > u32::MAX as usize || self.wedge_slots > u32::MAX as usize {
            return Err(Error::Config("reservoir size exceeds 2^32 - 1 slots".into()));
        }
        Ok(())
    }
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self::symmetric(Self::DEFAULT_SLOTS, 0)
    }
}

/// Sampled wedges with closed bits, indexed by closing pair.
#[derive(Clone, Debug)]
pub struct WedgeReservoir {
    slots: Vec<Option<Wedge>>,
    closed: Vec<bool>,
    /// Closing pair -> occupied slots whose wedge it closes.
    by_closing_pair: HashMap<Edge, Vec<u32>>,
    /// Position of each occupied slot in its `by_closing_pair` bucket.
    bucket_pos: Vec<u32>,
    occupied: usize,
    closed_count: usize,
}

impl WedgeReservoir {
    pub fn new(capacity: usize) -> Self {
        WedgeReservoir {
            slots: vec![None; capacity],
            closed: vec![false; capacity],
            by_closing_pair: HashMap::new(),
            bucket_pos: vec![0; capacity],
            occupied: 0,
            closed_count: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<Wedge>] {
        &self.slots
    }

    pub fn closed_flags(&self) -> &[bool] {
        &self.closed
    }

    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn closed_count(&self) -> usize {
        self.closed_count
    }

    /// Occupied slots whose wedge is closed by `edge`.
    pub fn slots_closed_by(&self, edge: &Edge) -> &[u32] {
        self.by_closing_pair.get(edge).map_or(&[], Vec::as_slice)
    }

    /// Sets the closed bit of every slot whose wedge `edge` closes. Returns
    /// how many bits flipped.
    pub fn close_with(&mut self, edge: &Edge) -> usize {
        let Some(bucket) = self.by_closing_pair.get(edge) else {
            return 0;
        };
        let mut flipped = 0;
        for &s in bucket {
            let flag = &mut self.closed[s as usize];
            flipped += !*flag as usize;
            *flag = true;
        }
        self.closed_count += flipped;
        flipped
    }

    /// Stores `wedge` in `slot` as open.
    pub fn put(&mut self, slot: usize, wedge: Wedge) {
        if let Some(old) = self.slots[slot] {
            let key = old.closing_edge();
            let bucket = self.by_closing_pair.get_mut(&key).expect("occupied slot is indexed");
            let at = self.bucket_pos[slot] as usize;
            bucket.swap_remove(at);
            if let Some(&moved) = bucket.get(at) {
                self.bucket_pos[moved as usize] = at as u32;
            }
            if bucket.is_empty() {
                self.by_closing_pair.remove(&key);
            }
            if self.closed[slot] {
                self.closed_count -= 1;
            }
        } else {
            self.occupied += 1;
        }
        let bucket = self.by_closing_pair.entry(wedge.closing_edge()).or_default();
        self.bucket_pos[slot] = bucket.len() as u32;
        bucket.push(slot as u32);
        self.slots[slot] = Some(wedge);
        self.closed[slot] = false;
    }
}

/// Running estimates after an update.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EstimateSnapshot {
    /// Stream position (edges seen).
    pub t: u64,
    pub occupied_wedge_slots: usize,
    /// Closed fraction of occupied wedge slots.
    pub rho: f64,
    pub kappa_est: f64,
    pub triangles_est: f64,
    pub wedges_est: f64,
    /// Slot pairs of the edge reservoir forming a wedge.
    pub tot_wedges: u64,
    /// Reservoirs not yet full: `t < s_e` or some wedge slot still empty.
    pub warmup: bool,
}

impl EstimateSnapshot {
    /// `kappa_est` above 1 means the wedge reservoir is too small or too
    /// young to be trusted.
    pub fn is_saturated(&self) -> bool {
        self.kappa_est > 1.0
    }
}

/// The streaming estimator. One instance per stream; not `Sync`-shared.
#[derive(Clone, Debug)]
pub struct StreamingTriangles {
    config: EstimatorConfig,
    edges: EdgeReservoir,
    wedges: WedgeReservoir,
    t: u64,
    rng: SeededRng,
}

impl StreamingTriangles {
    pub fn new(config: EstimatorConfig) -> Result<Self> {
        config.validate()?;
        Ok(StreamingTriangles {
            config,
            edges: EdgeReservoir::new(config.edge_slots),
            wedges: WedgeReservoir::new(config.wedge_slots),
            t: 0,
            rng: seeded(config.seed),
        })
    }

    pub fn config(&self) -> &EstimatorConfig {
        &self.config
    }

    /// Edges processed so far.
    pub fn time(&self) -> u64 {
        self.t
    }

    pub fn edge_reservoir(&self) -> &EdgeReservoir {
        &self.edges
    }

    pub fn wedge_reservoir(&self) -> &WedgeReservoir {
        &self.wedges
    }

    /// Processes the next stream edge. The caller guarantees `edge` has not
    /// appeared before in this stream.
    pub fn update(&mut self, edge: Edge) -> EstimateSnapshot {
        self.t += 1;
        self.wedges.close_with(&edge);

        let replaced = self.edges.observe(&mut self.rng, edge, self.t);
        if !replaced.is_empty() {
            self.resample_wedges(edge);
        }
        self.snapshot()
    }

    fn resample_wedges(&mut self, edge: Edge) {
        let tot = self.edges.tot_wedges();
        let new = self.edges.wedges_through(&edge);
        if tot == 0 || new == 0 {
            return;
        }
        let chosen = sample_slots(&mut self.rng, self.wedges.capacity(), new as f64 / tot as f64);
        if chosen.is_empty() {
            return;
        }
        // A uniform pair of N_t is a uniform adjacent slot matched with any
        // of the slots holding `edge`; the wedge value depends only on the
        // adjacent slot.
        let adjacent = self.edges.adjacent_slots(&edge);
        debug_assert_eq!(adjacent.len() as u64 * self.edges.multiplicity(&edge) as u64, new);
        for slot in chosen {
            let pick = adjacent[self.rng.random_range(0..adjacent.len())];
            let other = self.edges.slots()[pick as usize].expect("adjacent slot is occupied");
            let wedge = Wedge::from_edges(&edge, &other).expect("adjacent slots form a wedge");
            self.wedges.put(slot, wedge);
        }
    }

    /// Feeds every edge of `stream` and returns the final snapshot.
    pub fn process<'a, I>(&mut self, stream: I) -> EstimateSnapshot
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        for &e in stream {
            self.update(e);
        }
        self.snapshot()
    }

    pub fn snapshot(&self) -> EstimateSnapshot {
        let occupied = self.wedges.occupied();
        let rho = self.wedges.closed_count() as f64 / occupied.max(1) as f64;
        let tot = self.edges.tot_wedges();
        let s_e = self.config.edge_slots as f64;
        let t = self.t as f64;
        let wedges_est = t * t * tot as f64 / (s_e * (s_e - 1.0));
        EstimateSnapshot {
            t: self.t,
            occupied_wedge_slots: occupied,
            rho,
            kappa_est: 3.0 * rho,
            triangles_est: rho * wedges_est,
            wedges_est,
            tot_wedges: tot,
            warmup: self.t < self.config.edge_slots as u64 || occupied < self.wedges.capacity(),
        }
    }
}
