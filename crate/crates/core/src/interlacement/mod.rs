//! The `W`-wired interlacement process.
//!
//! A `W`-trajectory is a walk that starts and ends in `W` and avoids `W` in
//! between. Trajectories arrive as a Poisson process on the real line with
//! intensity `μ_W ⊗ Lebesgue`. Under `μ_W` the start `u₀` has probability
//! `d(u₀)/Vol(W)` and the rest is a non-lazy walk stopped on returning to `W`;
//! the walk is recurrent on a finite graph, so `μ_W` has total mass one and
//! the arrival rate is one per unit time.
//!
//! Reading the first-entry edges of the trajectories after time `t` gives
//! the Aldous–Broder forest `AB_W(t)`, distributed as the UST of `G/W`.

mod domination;
mod heights;

pub use domination::{domination_gaps, DominationGap};
pub use heights::{
    ball_growth, past_height_tail, BallGrowth, PastSampler, TailPoint, MIN_TAIL_REPS,
};

use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Network, VertexSet};
use crate::rng::stream_rng;
use crate::ust::OrientedForest;

/// Walk `(u₀, …, u_ℓ)` with `u₀, u_ℓ ∈ W`, interior outside `W`, and the
/// edge ids of its `ℓ` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct WTrajectory {
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl WTrajectory {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of steps `ℓ ≥ 1`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    /// Whether a directed edge of this trajectory leaves `v`: `v` is any
    /// vertex but the last. For `v ∈ W` that means the trajectory starts at
    /// `v`, otherwise that it visits `v`.
    fn emanates_from(&self, v: usize, in_w: bool) -> bool {
        if in_w {
            self.start() == v
        } else {
            self.vertices[1..self.vertices.len() - 1].contains(&v)
        }
    }

    pub fn is_valid_for(&self, g: &Network, w_mask: &[bool]) -> bool {
        let k = self.vertices.len();
        k >= 2
            && self.edges.len() == k - 1
            && w_mask[self.vertices[0]]
            && w_mask[self.vertices[k - 1]]
            && self.vertices[1..k - 1].iter().all(|&v| !w_mask[v])
            && self.edges.iter().enumerate().all(|(i, &e)| {
                let edge = g.edge(e);
                let (a, b) = (self.vertices[i], self.vertices[i + 1]);
                (edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a)
            })
    }
}

/// Reusable sampler of `μ_W`.
#[derive(Clone, Debug)]
pub struct TrajectorySampler {
    mask: Vec<bool>,
    starts: Vec<usize>,
    cumulative: Vec<f64>,
}

impl TrajectorySampler {
    pub fn new(g: &Network, w: &VertexSet) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut acc = 0.0;
        let cumulative = w
            .ids()
            .iter()
            .map(|&v| {
                acc += g.degree(v);
                acc
            })
            .collect();
        Ok(TrajectorySampler {
            mask: w.mask(g.vertex_count()),
            starts: w.ids().to_vec(),
            cumulative,
        })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn sample<R: Rng + ?Sized>(&self, g: &Network, rng: &mut R) -> WTrajectory {
        let total = self.cumulative[self.cumulative.len() - 1];
        let x = rng.gen::<f64>() * total;
        let i = self
            .cumulative
            .partition_point(|&c| c <= x)
            .min(self.starts.len() - 1);
        let mut v = self.starts[i];
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        loop {
            let h = g.step(v, rng);
            v = h.neighbor;
            vertices.push(v);
            edges.push(h.edge);
            if self.mask[v] {
                return WTrajectory { vertices, edges };
            }
        }
    }
}

/// One draw from `μ_W`.
pub fn sample_trajectory<R: Rng + ?Sized>(
    g: &Network,
    w: &VertexSet,
    rng: &mut R,
) -> Result<WTrajectory> {
    Ok(TrajectorySampler::new(g, w)?.sample(g, rng))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub trajectory: WTrajectory,
}

/// The process restricted to a window `[a, b]`, events sorted by time.
/// Equal timestamps (a floating-point accident) keep generation order.
#[derive(Clone, Debug)]
pub struct InterlacementSample {
    events: Vec<Event>,
    window: (f64, f64),
    w_set: VertexSet,
    seed: u64,
    extensions: u64,
}

fn sample_events(
    g: &Network,
    sampler: &TrajectorySampler,
    a: f64,
    b: f64,
    seed: u64,
    stream: u64,
) -> Result<Vec<Event>> {
    let mut rng = stream_rng(seed, stream);
    let length = b - a;
    let count = if length > 0.0 {
        Poisson::new(length)
            .map_err(|e| Error::invalid(format!("Poisson rate {length}: {e}")))?
            .sample(&mut rng) as usize
    } else {
        0
    };
    let mut times: Vec<f64> = (0..count).map(|_| rng.gen_range(a..b)).collect();
    times.sort_by(f64::total_cmp);
    Ok(times
        .into_iter()
        .map(|time| Event {
            time,
            trajectory: sampler.sample(g, &mut rng),
        })
        .collect())
}

/// The process on `[a, b]`. Stream 0 of `seed` drives the window itself;
/// each later extension `k` uses stream `k`.
pub fn sample_window(
    g: &Network,
    w_set: &VertexSet,
    a: f64,
    b: f64,
    seed: u64,
) -> Result<InterlacementSample> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(Error::invalid(format!("window [{a}, {b}] is empty")));
    }
    let sampler = TrajectorySampler::new(g, w_set)?;
    Ok(InterlacementSample {
        events: sample_events(g, &sampler, a, b, seed, 0)?,
        window: (a, b),
        w_set: w_set.clone(),
        seed,
        extensions: 0,
    })
}

impl InterlacementSample {
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn w_set(&self) -> &VertexSet {
        &self.w_set
    }

    /// Events with timestamp in `[a, b]`.
    pub fn events_in(&self, a: f64, b: f64) -> &[Event] {
        let lo = self.events.partition_point(|e| e.time < a);
        let hi = self.events.partition_point(|e| e.time <= b);
        &self.events[lo..hi.max(lo)]
    }

    fn events_from(&self, t: f64) -> &[Event] {
        &self.events[self.events.partition_point(|e| e.time < t)..]
    }

    /// Appends an independent sample of `(b, new_end]`.
    pub fn extend_to(&mut self, g: &Network, new_end: f64) -> Result<()> {
        let (_, b) = self.window;
        if new_end <= b {
            return Ok(());
        }
        self.extensions += 1;
        let sampler = TrajectorySampler::new(g, &self.w_set)?;
        let more = sample_events(g, &sampler, b, new_end, self.seed, self.extensions)?;
        self.events.extend(more);
        self.window.1 = new_end;
        Ok(())
    }

    /// Doubles the window length.
    pub fn extend(&mut self, g: &Network) -> Result<()> {
        let (a, b) = self.window;
        self.extend_to(g, b + (b - a).max(1.0))
    }

    /// `σ_t(v; W)`: the first event time `≥ t` whose trajectory has a
    /// directed edge leaving `v`.
    pub fn sigma(&self, v: usize, t: f64) -> Result<f64> {
        let in_w = self.w_set.contains(v);
        self.events_from(t)
            .iter()
            .find(|e| e.trajectory.emanates_from(v, in_w))
            .map(|e| e.time)
            .ok_or(Error::CoverageExhausted {
                window_end: self.window.1,
            })
    }

    /// `e_t(v; W)` for `v ∉ W`: the first edge of the first trajectory after
    /// `t` that enters `v`, as `(tail, head = v, edge id)`.
    pub fn first_entry_edge(&self, v: usize, t: f64) -> Result<(usize, usize, EdgeId)> {
        if self.w_set.contains(v) {
            return Err(Error::invalid(format!(
                "vertex {v} lies in W and has no entry edge"
            )));
        }
        for e in self.events_from(t) {
            let xs = e.trajectory.vertices();
            if let Some(i) = xs.iter().position(|&x| x == v) {
                return Ok((xs[i - 1], v, e.trajectory.edges()[i - 1]));
            }
        }
        Err(Error::CoverageExhausted {
            window_end: self.window.1,
        })
    }

    /// `I_W[a, b]` by a direct scan of the events in `[a, b]`: every vertex
    /// some trajectory leaves. Sorted.
    pub fn interlacement_set(&self, a: f64, b: f64) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .events_in(a, b)
            .iter()
            .flat_map(|e| {
                let xs = e.trajectory.vertices();
                xs[..xs.len() - 1].iter().copied()
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `AB_W(t)`: each `v ∉ W` points back along its first entry edge after
    /// `t`; roots are `W`.
    pub fn ab_forest(&self, g: &Network, t: f64) -> Result<OrientedForest> {
        let n = g.vertex_count();
        let mask = self.w_set.mask(n);
        let mut parent = vec![None; n];
        let mut missing = n - self.w_set.len();
        for e in self.events_from(t) {
            if missing == 0 {
                break;
            }
            let xs = e.trajectory.vertices();
            for (i, &v) in xs.iter().enumerate().skip(1) {
                if !mask[v] && parent[v].is_none() {
                    parent[v] = Some((xs[i - 1], e.trajectory.edges()[i - 1]));
                    missing -= 1;
                }
            }
        }
        if missing > 0 {
            return Err(Error::CoverageExhausted {
                window_end: self.window.1,
            });
        }
        OrientedForest::from_parents(parent)
    }

    /// [`ab_forest`](Self::ab_forest), doubling the window until every
    /// vertex is covered.
    pub fn ab_forest_extending(&mut self, g: &Network, t: f64) -> Result<OrientedForest> {
        if t > self.window.1 {
            self.extend_to(g, t)?;
        }
        loop {
            match self.ab_forest(g, t) {
                Err(Error::CoverageExhausted { .. }) => self.extend(g)?,
                other => return other,
            }
        }
    }

    /// `Φ_x`: every timestamp and the window moved by `x`.
    pub fn time_shift(&self, x: f64) -> InterlacementSample {
        let mut out = self.clone();
        for e in &mut out.events {
            e.time += x;
        }
        out.window = (self.window.0 + x, self.window.1 + x);
        out
    }

    /// One line per event: `timestamp,v0 v1 … vℓ`.
    pub fn write_event_log<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "timestamp,vertices")?;
        for e in &self.events {
            let vs: Vec<String> = e
                .trajectory
                .vertices()
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "{},{}", e.time, vs.join(" "))?;
        }
        Ok(())
    }
}
