use super::{Edge, Network, VertexSet};
use crate::error::{Error, Result};

/// `G/W`: `W` merged into one super-vertex.
///
/// Vertices outside `W` keep their relative order and are renumbered
/// `0..n-|W|`; the super-vertex is the last id `n-|W|`. Every edge keeps its
/// id, so edges inside `W` become self-loops on the super-vertex and parallel
/// edges appear wherever several edges join the same outside vertex to `W`.
pub fn contract(g: &Network, w: &VertexSet) -> Result<Network> {
    if w.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.vertex_count();
    let inside = w.mask(n);
    let sink = n - w.len();
    let mut map = vec![sink; n];
    let mut next = 0;
    for v in 0..n {
        if !inside[v] {
            map[v] = next;
            next += 1;
        }
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            u: map[e.u],
            v: map[e.v],
            weight: e.weight,
        })
        .collect();
    Ok(Network::new(sink + 1, edges)?.with_contraction_map(map))
}

/// Weight of the edge `{u, ρ}` in the sunny network, making the lazy step
/// probability from `u` to the sun exactly `β²/√n`.
pub fn sun_edge_weight(degree: f64, n: usize, beta: f64) -> f64 {
    let b2 = 2.0 * beta * beta;
    b2 * degree / ((n as f64).sqrt() - b2)
}

/// Sunny network: `g` plus a sun vertex `ρ = n` joined to every vertex.
///
/// Original edges keep their ids `0..m`; the sun edge of `u` has id `m + u`.
pub fn make_sunny(g: &Network, beta: f64) -> Result<Network> {
    if !g.has_unit_weights() {
        return Err(Error::invalid("sunny network needs a unit-weight graph"));
    }
    let n = g.vertex_count();
    let limit = (n as f64).powf(0.25) / std::f64::consts::SQRT_2;
    if !(beta > 0.0 && beta < limit) {
        return Err(Error::invalid(format!(
            "beta = {beta} outside (0, {limit})"
        )));
    }
    let mut edges = g.edges().to_vec();
    edges.extend((0..n).map(|u| Edge {
        u,
        v: n,
        weight: sun_edge_weight(g.degree(u), n, beta),
    }));
    Network::new(n + 1, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_hypercube, make_torus};

    #[test]
    fn contract_triangle_pair() {
        let k3 = make_complete(3).unwrap();
        let w = VertexSet::new(&k3, [0, 1]).unwrap();
        let c = contract(&k3, &w).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 3);
        let loops = c.edges().iter().filter(|e| e.is_loop()).count();
        assert_eq!(loops, 1);
        let parallel = c.edges().iter().filter(|e| !e.is_loop()).count();
        assert_eq!(parallel, 2);
        assert_eq!(c.contraction_map().unwrap(), &[1, 1, 0]);
    }

    #[test]
    fn contract_singleton_is_relabeling() {
        let g = make_cycle(5).unwrap();
        let w = VertexSet::new(&g, [2]).unwrap();
        let c = contract(&g, &w).unwrap();
        let map = c.contraction_map().unwrap();
        assert_eq!(c.vertex_count(), 5);
        for (i, e) in g.edges().iter().enumerate() {
            let ce = c.edges()[i];
            assert_eq!((map[e.u], map[e.v]), (ce.u, ce.v));
        }
        assert_eq!(c.degrees().iter().sum::<f64>(), g.volume());
    }

    #[test]
    fn contract_c4_opposite() {
        let g = make_cycle(4).unwrap();
        let w = VertexSet::new(&g, [0, 2]).unwrap();
        let c = contract(&g, &w).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edge_count(), 4);
        assert!(c.edges().iter().all(|e| !e.is_loop()));
    }

    #[test]
    fn contract_rejects_empty() {
        let g = make_cycle(4).unwrap();
        let w = VertexSet::new(&g, []).unwrap();
        assert!(matches!(contract(&g, &w), Err(Error::EmptySet)));
    }

    #[test]
    fn contract_keeps_edge_multiset() {
        let g = make_torus(2, 4).unwrap();
        let w = VertexSet::new(&g, [0, 5, 10, 15]).unwrap();
        let c = contract(&g, &w).unwrap();
        assert_eq!(c.edge_count(), g.edge_count());
        for (a, b) in g.edges().iter().zip(c.edges()) {
            assert_eq!(a.weight, b.weight);
        }
    }

    #[test]
    fn sun_weight_example() {
        let w = sun_edge_weight(10.0, 100, 0.5);
        assert!((w - 5.0 / 9.5).abs() < 1e-15);
        assert_eq!(sun_edge_weight(10.0, 100, 0.0), 0.0);
    }

    #[test]
    fn sunny_step_probability_is_exact() {
        for m in [4u32, 10] {
            let g = make_hypercube(m).unwrap();
            let n = g.vertex_count();
            for beta in [0.1, 0.5, 1.0] {
                let s = make_sunny(&g, beta).unwrap();
                let target = beta * beta / (n as f64).sqrt();
                for u in 0..n {
                    let w_sun: f64 = s
                        .neighbors(u)
                        .iter()
                        .filter(|h| h.neighbor == n)
                        .map(|h| h.weight)
                        .sum();
                    let p = 0.5 * w_sun / s.degree(u);
                    assert!(((p - target) / target).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sunny_rejects_large_beta() {
        let g = make_hypercube(4).unwrap();
        assert!(make_sunny(&g, 1.5).is_err());
        assert!(make_sunny(&g, 0.0).is_err());
    }
}
