//! The experiment runners. Each takes an [`ExperimentSpec`] and returns
//! per-replica rows, summaries and `check:` rows in a deterministic order.

mod diameter;
mod height_ball;
mod path_law;
mod sunny;
mod two_walk;

pub use diameter::run_diameter_scaling;
pub use height_ball::run_height_and_ball;
pub use path_law::run_path_law;
pub use sunny::run_sunny_coupling;
pub use two_walk::{complete_graph_escape, run_two_walk_claims};

use rand::Rng;
use rayon::prelude::*;
use ustlab_core::stats::quantile;
use ustlab_core::ust::{ust_path_with, LoopErasedPath};
use ustlab_core::walk::StationarySampler;
use ustlab_core::Network;

use crate::config::Cell;
use crate::error::Result;
use crate::result::CellRows;

/// Runs `f(i, seed_i)` for every replica; results come back in replica order
/// whatever thread ran them.
pub(crate) fn replicas<T, F>(cell: &Cell, reps: usize, f: F) -> Result<Vec<(u64, T)>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    (0..reps)
        .into_par_iter()
        .map(|i| {
            let seed = cell.replica_seed(i);
            f(i, seed).map(|t| (seed, t))
        })
        .collect()
}

/// UST path between two distinct stationary vertices.
pub(crate) struct StationaryPath {
    pub u: usize,
    pub v: usize,
    pub collisions: usize,
    pub path: LoopErasedPath,
}

pub(crate) fn stationary_path<R: Rng + ?Sized>(
    g: &Network,
    pi: &StationarySampler,
    rng: &mut R,
) -> Result<StationaryPath> {
    let (u, v, collisions) = pi.sample_distinct_pair(rng);
    let path = ust_path_with(g, u, v, rng)?;
    Ok(StationaryPath {
        u,
        v,
        collisions,
        path,
    })
}

/// Quantile summary rows `<name>_q05` … `<name>_q95`.
pub(crate) fn quantile_rows(rows: &mut CellRows, name: &str, values: &[f64]) {
    for (label, q) in [
        ("q05", 0.05),
        ("q25", 0.25),
        ("q50", 0.5),
        ("q75", 0.75),
        ("q95", 0.95),
    ] {
        rows.value(format!("{name}_{label}"), quantile(values, q));
    }
}

/// Maximal runs of consecutive items with the same family.
pub(crate) fn family_runs<T>(items: &[T], family: impl Fn(&T) -> &str) -> Vec<&[T]> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=items.len() {
        if k == items.len() || family(&items[k]) != family(&items[start]) {
            out.push(&items[start..k]);
            start = k;
        }
    }
    out
}
