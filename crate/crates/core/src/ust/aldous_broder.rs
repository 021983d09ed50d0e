use rand::Rng;

use super::forest::OrientedForest;
use crate::error::Result;
use crate::graph::Network;
use crate::rng::seeded;
use crate::walk::lazy_step_edge;

/// Aldous–Broder output with its cover time.
#[derive(Clone, Debug)]
pub struct AldousBroderRun {
    pub tree: OrientedForest,
    /// Lazy steps taken until the last vertex was first entered.
    pub cover_steps: u64,
}

/// Weighted UST of `g` rooted at `start`, read from the first-entry edges
/// of a lazy walk.
pub fn aldous_broder(g: &Network, start: usize, seed: u64) -> Result<OrientedForest> {
    Ok(aldous_broder_traced(g, start, &mut seeded(seed))?.tree)
}

pub fn aldous_broder_traced<R: Rng + ?Sized>(
    g: &Network,
    start: usize,
    rng: &mut R,
) -> Result<AldousBroderRun> {
    g.check_vertex(start)?;
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut remaining = n - 1;
    let mut x = start;
    let mut steps = 0u64;
    while remaining > 0 {
        steps += 1;
        if let Some(h) = lazy_step_edge(g, x, rng) {
            let y = h.neighbor;
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some((x, h.edge));
                remaining -= 1;
            }
            x = y;
        }
    }
    Ok(AldousBroderRun {
        tree: OrientedForest::from_parents(parent)?,
        cover_steps: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, EdgeId};
    use crate::rng::stream_rng;

    #[test]
    fn single_edge() {
        let k2 = make_complete(2).unwrap();
        for seed in 0..10 {
            let t = aldous_broder(&k2, 0, seed).unwrap();
            assert_eq!(t.parent(1), Some(0));
            assert_eq!(t.parent_edge(1), Some(EdgeId(0)));
        }
    }

    #[test]
    fn cover_time_matches_visits() {
        // Replay the same draws and check that the tree completes exactly at cover.
        let g = make_cycle(7).unwrap();
        for s in 0..50 {
            let run = aldous_broder_traced(&g, 3, &mut stream_rng(1, s)).unwrap();
            assert!(run.tree.is_spanning_tree_of(&g));
            let mut rng = stream_rng(1, s);
            let mut seen = [false; 7];
            seen[3] = true;
            let (mut x, mut steps) = (3, 0u64);
            while seen.iter().any(|s| !s) {
                x = crate::walk::lazy_step(&g, x, &mut rng);
                seen[x] = true;
                steps += 1;
            }
            assert_eq!(steps, run.cover_steps);
        }
    }
}
