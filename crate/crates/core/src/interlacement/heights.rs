use super::sample_window;
use crate::error::{Error, Result};
use crate::graph::{Network, VertexSet};
use crate::rng::{split_seed, stream_rng};
use crate::ust::{wilson_with, OrientedForest, Stepping};
use crate::walk::{w_bubble_sum, Estimate, DENSE_CAP};

/// Smallest replica count accepted by [`past_height_tail`].
pub const MIN_TAIL_REPS: usize = 1000;

/// How the forests `T_{W_u}` are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PastSampler {
    #[default]
    Wilson,
    /// `AB_{W_u}(0)` read from an interlacement window.
    Interlacement,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailPoint {
    pub ell: usize,
    pub estimate: Estimate,
}

fn wired_forest(
    g: &Network,
    w: &VertexSet,
    sampler: PastSampler,
    seed: u64,
    rep: u64,
) -> Result<OrientedForest> {
    match sampler {
        PastSampler::Wilson => {
            wilson_with(g, w, None, Stepping::NonLazy, &mut stream_rng(seed, rep))
        }
        PastSampler::Interlacement => {
            sample_window(g, w, 0.0, 1.0, split_seed(seed, rep))?.ab_forest_extending(g, 0.0)
        }
    }
}

/// Empirical `P(𝔥(P^{W_u}(u)) ≥ ℓ)` for each `ℓ`, with `W_u = W ∪ {u}`.
pub fn past_height_tail(
    g: &Network,
    w_set: &VertexSet,
    u: usize,
    ell_values: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<TailPoint>> {
    past_height_tail_with(g, w_set, u, ell_values, reps, seed, PastSampler::Wilson)
}

pub fn past_height_tail_with(
    g: &Network,
    w_set: &VertexSet,
    u: usize,
    ell_values: &[usize],
    reps: usize,
    seed: u64,
    sampler: PastSampler,
) -> Result<Vec<TailPoint>> {
    g.check_vertex(u)?;
    if reps < MIN_TAIL_REPS {
        return Err(Error::invalid(format!(
            "need at least {MIN_TAIL_REPS} replicas, got {reps}"
        )));
    }
    let w_u = w_set.union(g, &VertexSet::singleton(g, u)?);
    let heights = (0..reps as u64)
        .map(|rep| Ok(wired_forest(g, &w_u, sampler, seed, rep)?.height_of_past(u)))
        .collect::<Result<Vec<usize>>>()?;
    Ok(ell_values
        .iter()
        .map(|&ell| TailPoint {
            ell,
            estimate: Estimate::proportion(heights.iter().filter(|&&h| h >= ell).count(), reps),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallGrowth {
    pub ell: usize,
    /// Mean of `|𝔅_{T_W}(u, ℓ)|`.
    pub mean: Estimate,
    /// `8·D·ℓ·B_W(G)`, when the exact backend can compute `B_W`.
    pub bound: Option<f64>,
}

/// Size of the radius-`ℓ` ball around `u ∈ W` in the forest `T_W`, for
/// each `ℓ` in `ell_values` over the same `reps` forests.
pub fn ball_growth(
    g: &Network,
    w_set: &VertexSet,
    u: usize,
    ell_values: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<BallGrowth>> {
    if !w_set.contains(u) {
        return Err(Error::invalid(format!("ball centre {u} must lie in W")));
    }
    if reps == 0 {
        return Err(Error::invalid("need at least one replica"));
    }
    let mut sizes = vec![Vec::with_capacity(reps); ell_values.len()];
    for rep in 0..reps as u64 {
        let forest = wired_forest(g, w_set, PastSampler::Wilson, seed, rep)?;
        let dist = forest.distances_from(u);
        for (k, &ell) in ell_values.iter().enumerate() {
            sizes[k].push(dist.iter().filter(|&&d| d <= ell).count() as f64);
        }
    }
    let bubble = if g.vertex_count() <= DENSE_CAP {
        Some(w_bubble_sum(g, w_set)?)
    } else {
        None
    };
    Ok(ell_values
        .iter()
        .zip(&sizes)
        .map(|(&ell, s)| BallGrowth {
            ell,
            mean: Estimate::mean_of(s),
            bound: bubble.map(|b| 8.0 * g.balance() * ell as f64 * b),
        })
        .collect())
}
