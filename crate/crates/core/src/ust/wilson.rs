use rand::Rng;

use super::forest::OrientedForest;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Network, VertexSet};
use crate::rng::seeded;

/// Walk used for the random-walk phases of Wilson's algorithm. The law of
/// the output does not depend on it; the non-lazy walk is about twice as
/// fast.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stepping {
    #[default]
    Lazy,
    NonLazy,
}

/// Weighted UST of `g/root_set`, as a forest of `g` rooted at `root_set`.
///
/// Vertices are processed in `vertex_order` (then any remaining vertices in
/// increasing id order). Random draws are consumed vertex by vertex and,
/// within one vertex, step by step.
pub fn wilson(
    g: &Network,
    root_set: &VertexSet,
    seed: u64,
    vertex_order: Option<&[usize]>,
) -> Result<OrientedForest> {
    wilson_with(g, root_set, vertex_order, Stepping::Lazy, &mut seeded(seed))
}

/// [`wilson`] with non-lazy walks.
pub fn wilson_fast(g: &Network, root_set: &VertexSet, seed: u64) -> Result<OrientedForest> {
    wilson_with(g, root_set, None, Stepping::NonLazy, &mut seeded(seed))
}

pub fn wilson_with<R: Rng + ?Sized>(
    g: &Network,
    root_set: &VertexSet,
    vertex_order: Option<&[usize]>,
    stepping: Stepping,
    rng: &mut R,
) -> Result<OrientedForest> {
    if root_set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.vertex_count();
    let mut in_tree = root_set.mask(n);
    let mut parent = vec![None; n];
    if let Some(order) = vertex_order {
        for &v in order {
            g.check_vertex(v)?;
        }
    }
    let order = vertex_order.unwrap_or(&[]).iter().copied().chain(0..n);
    grow(g, &mut in_tree, &mut parent, order, stepping, rng);
    OrientedForest::from_parents(parent)
}

/// Completes a partial forest: every vertex not yet marked `in_tree` is
/// joined by a loop-erased walk.
pub(crate) fn grow<R: Rng + ?Sized>(
    g: &Network,
    in_tree: &mut [bool],
    parent: &mut [Option<(usize, EdgeId)>],
    order: impl Iterator<Item = usize>,
    stepping: Stepping,
    rng: &mut R,
) {
    let lazy = stepping == Stepping::Lazy;
    let mut next = vec![(usize::MAX, EdgeId(usize::MAX)); g.vertex_count()];
    for v in order {
        let mut u = v;
        while !in_tree[u] {
            if lazy && rng.gen::<bool>() {
                continue;
            }
            let h = g.step(u, rng);
            next[u] = (h.neighbor, h.edge);
            u = h.neighbor;
        }
        let mut u = v;
        while !in_tree[u] {
            in_tree[u] = true;
            parent[u] = Some(next[u]);
            u = next[u].0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_path, Edge};

    #[test]
    fn tree_input_returns_the_tree() {
        let g = make_path(6).unwrap();
        for seed in 0..20 {
            let f = wilson(&g, &VertexSet::singleton(&g, 2).unwrap(), seed, None).unwrap();
            assert_eq!(f.edge_ids(), (0..5).map(EdgeId).collect::<Vec<_>>());
            assert!(f.is_spanning_tree_of(&g));
        }
    }

    #[test]
    fn root_set_gives_forest() {
        let g = make_complete(6).unwrap();
        let w = VertexSet::new(&g, [0, 5]).unwrap();
        let f = wilson(&g, &w, 3, Some(&[4, 1])).unwrap();
        assert_eq!(f.roots(), &[0, 5]);
        assert_eq!(f.edge_count(), 4);
        f.validate(&g).unwrap();
    }

    #[test]
    fn parallel_edges_chosen_by_weight() {
        // Two parallel edges of weight 1 and 3: the heavy one is picked w.p. 3/4.
        let g = Network::new(
            2,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weight: 1.0,
                },
                Edge {
                    u: 0,
                    v: 1,
                    weight: 3.0,
                },
            ],
        )
        .unwrap();
        let root = VertexSet::singleton(&g, 0).unwrap();
        let heavy = (0..4000)
            .filter(|&s| wilson(&g, &root, s, None).unwrap().parent_edge(1) == Some(EdgeId(1)))
            .count();
        let p = heavy as f64 / 4000.0;
        assert!(
            (p - 0.75).abs() < 4.0 * (0.75f64 * 0.25 / 4000.0).sqrt(),
            "{p}"
        );
    }

    #[test]
    fn rejects_bad_order() {
        let g = make_path(3).unwrap();
        assert!(wilson(&g, &VertexSet::singleton(&g, 0).unwrap(), 0, Some(&[9])).is_err());
    }
}
