use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Network};
use crate::rng::seeded;

/// A loop-erased walk: `vertices[k]` and `vertices[k+1]` are joined by
/// `edges[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopErasedPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
    /// Length of the walk that was erased (lazy holds included).
    pub walk_steps: u64,
}

impl LoopErasedPath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The UST path between `u` and `v`, sampled as the loop erasure of a lazy
/// walk from `u` stopped on hitting `v`.
pub fn ust_path(g: &Network, u: usize, v: usize, seed: u64) -> Result<LoopErasedPath> {
    ust_path_with(g, u, v, &mut seeded(seed))
}

pub fn ust_path_with<R: Rng + ?Sized>(
    g: &Network,
    u: usize,
    v: usize,
    rng: &mut R,
) -> Result<LoopErasedPath> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::invalid("UST path needs distinct endpoints"));
    }
    let mut target = vec![false; g.vertex_count()];
    target[v] = true;
    Ok(loop_erased_walk(g, u, &target, true, rng))
}

/// Loop erasure of a walk from `start` stopped on hitting `target`.
///
/// The erasure is read from last-exit pointers, so memory is linear in the
/// number of vertices whatever the walk length; following the last exit
/// from each vertex reproduces the chronological loop erasure.
pub fn loop_erased_walk<R: Rng + ?Sized>(
    g: &Network,
    start: usize,
    target: &[bool],
    lazy: bool,
    rng: &mut R,
) -> LoopErasedPath {
    let mut next = vec![(usize::MAX, EdgeId(usize::MAX)); g.vertex_count()];
    let mut x = start;
    let mut steps = 0u64;
    while !target[x] {
        steps += 1;
        if lazy && rng.gen::<bool>() {
            continue;
        }
        let h = g.step(x, rng);
        next[x] = (h.neighbor, h.edge);
        x = h.neighbor;
    }
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let mut x = start;
    while !target[x] {
        let (y, e) = next[x];
        vertices.push(y);
        edges.push(e);
        x = y;
    }
    LoopErasedPath {
        vertices,
        edges,
        walk_steps: steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, make_torus};
    use crate::rng::stream_rng;
    use crate::ust::loop_erase;
    use crate::walk::{lazy_step, Walk};

    #[test]
    fn tree_neighbours_give_the_edge() {
        let g = make_path(5).unwrap();
        let p = ust_path(&g, 2, 3, 1).unwrap();
        assert_eq!(p.vertices, vec![2, 3]);
        assert_eq!(p.edges, vec![EdgeId(2)]);
        assert!(ust_path(&g, 1, 1, 0).is_err());
    }

    #[test]
    fn equals_loop_erasure_of_the_same_walk() {
        let g = make_torus(2, 5).unwrap();
        for s in 0..100 {
            let p = ust_path_with(&g, 0, 12, &mut stream_rng(7, s)).unwrap();
            let mut rng = stream_rng(7, s);
            let mut xs = vec![0];
            while *xs.last().unwrap() != 12 {
                xs.push(lazy_step(&g, *xs.last().unwrap(), &mut rng));
            }
            assert_eq!(p.walk_steps as usize, xs.len() - 1);
            assert_eq!(loop_erase(&Walk::new(xs).unwrap()).path, p.vertices);
            for (k, e) in p.edges.iter().enumerate() {
                let edge = g.edge(*e);
                let (a, b) = (p.vertices[k], p.vertices[k + 1]);
                assert!((edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a));
            }
        }
    }
}
