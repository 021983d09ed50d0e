//! Lazy random walks and the estimators built on them.
//!
//! Every estimator comes in an exact flavour (dense or sparse linear algebra
//! on the lazy kernel) and, where the quantity is a probability of a walk
//! event, a Monte Carlo flavour selected through [`WalkLaw`].

pub mod exact;
pub mod kernel;
pub mod monte_carlo;

pub use exact::{
    bubble_sum, capacity_exact, closeness_exact, effective_conductance, expected_hitting_times,
    green_killed, hitting_probability_lower, m_w, mixing_bounds_hold, target_time, target_times,
    transition_probability, transition_row, tv_distance, uniform_mixing_time, w_bubble_sum,
    w_bubble_sum_truncated, BubbleSum, GreenFunction, HittingLowerReport, DENSE_CAP, SPARSE_CAP,
};
pub use kernel::LazyKernel;
pub use monte_carlo::{capacity, capacity_monte_carlo, closeness, closeness_monte_carlo};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{HalfEdge, Network};

/// Finite vertex sequence `(X_0, ..., X_L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<usize>,
}

impl Walk {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("a walk has at least one vertex"));
        }
        Ok(Walk { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    /// Number of steps `L`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
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

    /// `X[a, b]` over the integer interval `[⌈a⌉, ⌊b⌋]`, clipped to `[0, L]`.
    pub fn closed(&self, a: f64, b: f64) -> &[usize] {
        let lo = a.ceil().max(0.0);
        let hi = b.floor().min(self.len() as f64);
        if hi < lo {
            return &[];
        }
        &self.vertices[lo as usize..=hi as usize]
    }

    /// `X[a, b)` on integer bounds, clipped to `[0, L]`.
    pub fn half_open(&self, a: usize, b: usize) -> &[usize] {
        let hi = b.min(self.vertices.len());
        let lo = a.min(hi);
        &self.vertices[lo..hi]
    }

    pub fn reversed(&self) -> Walk {
        let mut v = self.vertices.clone();
        v.reverse();
        Walk { vertices: v }
    }

    /// Consecutive vertices are equal or joined by an edge of `g`.
    pub fn is_valid_in(&self, g: &Network) -> bool {
        self.vertices.iter().all(|&v| v < g.vertex_count())
            && self
                .vertices
                .windows(2)
                .all(|p| p[0] == p[1] || g.neighbors(p[0]).iter().any(|h| h.neighbor == p[1]))
    }
}

/// One lazy step: hold with probability 1/2, else a weighted non-lazy step.
/// Draws the hold coin first, then (if moving) one neighbour draw.
pub fn lazy_step<R: Rng + ?Sized>(g: &Network, v: usize, rng: &mut R) -> usize {
    lazy_step_edge(g, v, rng).map_or(v, |h| h.neighbor)
}

/// Like [`lazy_step`] but reports the half-edge used, `None` on a hold.
pub fn lazy_step_edge<R: Rng + ?Sized>(g: &Network, v: usize, rng: &mut R) -> Option<HalfEdge> {
    if rng.gen::<bool>() {
        None
    } else {
        Some(g.step(v, rng))
    }
}

/// Lazy walk of exactly `steps` steps from `start`.
pub fn sample_lazy_walk<R: Rng + ?Sized>(
    g: &Network,
    start: usize,
    steps: usize,
    rng: &mut R,
) -> Walk {
    let mut vertices = Vec::with_capacity(steps + 1);
    let mut x = start;
    vertices.push(x);
    for _ in 0..steps {
        x = lazy_step(g, x, rng);
        vertices.push(x);
    }
    Walk { vertices }
}

/// Walk from `start` until the first time `stop` holds (checked at time 0
/// too). Lazy or non-lazy according to `lazy`.
pub fn walk_until<R, F>(g: &Network, start: usize, lazy: bool, mut stop: F, rng: &mut R) -> Walk
where
    R: Rng + ?Sized,
    F: FnMut(usize) -> bool,
{
    let mut vertices = vec![start];
    let mut x = start;
    while !stop(x) {
        x = if lazy {
            lazy_step(g, x, rng)
        } else {
            g.step(x, rng).neighbor
        };
        vertices.push(x);
    }
    Walk { vertices }
}

/// Exact sampler of the stationary distribution by inverse CDF over the
/// weighted degrees.
#[derive(Clone, Debug)]
pub struct StationarySampler {
    cumulative: Vec<f64>,
}

impl StationarySampler {
    pub fn new(g: &Network) -> Self {
        let mut acc = 0.0;
        let cumulative = g
            .degrees()
            .iter()
            .map(|d| {
                acc += d;
                acc
            })
            .collect();
        StationarySampler { cumulative }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = self.cumulative[self.cumulative.len() - 1];
        let x = rng.gen::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= x)
            .min(self.cumulative.len() - 1)
    }

    /// Two distinct stationary vertices and the number of collisions that
    /// were resampled to get them.
    pub fn sample_distinct_pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, usize, usize) {
        assert!(self.cumulative.len() > 1, "need two vertices");
        let u = self.sample(rng);
        let mut collisions = 0;
        loop {
            let v = self.sample(rng);
            if v != u {
                return (u, v, collisions);
            }
            collisions += 1;
        }
    }
}

/// Estimate with its standard error; exact values have `stderr == 0` and
/// `samples == 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            stderr: 0.0,
            samples: 0,
        }
    }

    /// Proportion `hits / samples` with binomial standard error.
    pub fn proportion(hits: usize, samples: usize) -> Self {
        let p = hits as f64 / samples as f64;
        Estimate {
            value: p,
            stderr: (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
        }
    }

    /// Sample mean with the usual `s / √N` standard error.
    pub fn mean_of(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Estimate {
                value: f64::NAN,
                stderr: f64::NAN,
                samples: 0,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Estimate {
            value: mean,
            stderr: (var / n as f64).sqrt(),
            samples: n,
        }
    }

    /// Whether `other` lies within `k` combined standard errors.
    pub fn agrees_with(&self, other: f64, k: f64) -> bool {
        (self.value - other).abs() <= k * self.stderr.max(1e-12)
    }
}

/// Backend used by the estimators that offer both.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WalkLaw {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}
