//! Weighted multigraphs.
//!
//! Vertices are dense ids `0..n`. Every edge carries an [`EdgeId`] equal to its
//! index in the edge list, and contraction keeps those ids, so a tree sampled
//! on `G/W` can be read back as an edge set of `G`.
//!
//! A self-loop is stored once in its vertex's adjacency list and contributes
//! its weight once to the weighted degree. A walk step along a self-loop stays
//! put and is distinct from a lazy hold.

mod contract;
mod generators;
mod io;

pub use contract::{contract, make_sunny, sun_edge_weight};
pub use generators::{
    make_complete, make_cycle, make_expander_with_paths, make_hypercube, make_negative_controls,
    make_path, make_random_connected, make_random_regular, make_star, make_torus, make_two_cliques,
    ControlKind,
};
pub use io::{read_edge_list, write_edge_list};

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn unit(u: usize, v: usize) -> Self {
        Edge { u, v, weight: 1.0 }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// One slot of an adjacency list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfEdge {
    pub neighbor: usize,
    pub edge: EdgeId,
    pub weight: f64,
}

/// Immutable connected weighted multigraph.
#[derive(Clone, Debug)]
pub struct Network {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<HalfEdge>>,
    degree: Vec<f64>,
    // Per-vertex prefix sums of half-edge weights; empty for unit-weight graphs.
    cumulative: Vec<Vec<f64>>,
    unit_weights: bool,
    volume: f64,
    contraction_map: Option<Vec<usize>>,
}

impl Network {
    /// Builds a network and checks every invariant: endpoints in range,
    /// strictly positive finite weights, and connectivity.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let g = Self::build(n, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn from_unit_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| Edge::unit(u, v)).collect())
    }

    fn build(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("network needs at least one vertex"));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut unit_weights = true;
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::invalid(format!(
                    "edge {i} has weight {}, weights must be positive and finite",
                    e.weight
                )));
            }
            if e.weight != 1.0 {
                unit_weights = false;
            }
            let id = EdgeId(i);
            adjacency[e.u].push(HalfEdge {
                neighbor: e.v,
                edge: id,
                weight: e.weight,
            });
            if !e.is_loop() {
                adjacency[e.v].push(HalfEdge {
                    neighbor: e.u,
                    edge: id,
                    weight: e.weight,
                });
            }
        }
        let degree: Vec<f64> = adjacency
            .iter()
            .map(|hs| hs.iter().map(|h| h.weight).sum())
            .collect();
        let cumulative = if unit_weights {
            Vec::new()
        } else {
            adjacency
                .iter()
                .map(|hs| {
                    let mut acc = 0.0;
                    hs.iter()
                        .map(|h| {
                            acc += h.weight;
                            acc
                        })
                        .collect()
                })
                .collect()
        };
        let volume = degree.iter().sum();
        Ok(Network {
            edges,
            adjacency,
            degree,
            cumulative,
            unit_weights,
            volume,
            contraction_map: None,
        })
    }

    pub(crate) fn with_contraction_map(mut self, map: Vec<usize>) -> Self {
        self.contraction_map = Some(map);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn neighbors(&self, v: usize) -> &[HalfEdge] {
        &self.adjacency[v]
    }

    /// Weighted degree (self-loops counted once).
    pub fn degree(&self, v: usize) -> f64 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    /// Sum of all weighted degrees.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn has_unit_weights(&self) -> bool {
        self.unit_weights
    }

    /// Original vertex -> vertex of this network, when built by [`contract`].
    pub fn contraction_map(&self) -> Option<&[usize]> {
        self.contraction_map.as_deref()
    }

    /// Stationary distribution of the lazy walk, proportional to weighted degree.
    pub fn stationary(&self) -> Vec<f64> {
        self.degree.iter().map(|d| d / self.volume).collect()
    }

    pub fn stationary_at(&self, v: usize) -> f64 {
        self.degree[v] / self.volume
    }

    pub fn min_degree(&self) -> f64 {
        self.degree.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_degree(&self) -> f64 {
        self.degree.iter().copied().fold(0.0, f64::max)
    }

    /// Balance ratio `Δ/δ` of maximum to minimum weighted degree.
    pub fn balance(&self) -> f64 {
        self.max_degree() / self.min_degree()
    }

    pub fn is_connected(&self) -> bool {
        let dist = self.bfs_distances(0);
        dist.iter().all(|d| d.is_some())
    }

    /// Hop distances from `source`, `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for h in &self.adjacency[x] {
                if dist[h.neighbor].is_none() {
                    dist[h.neighbor] = Some(dx + 1);
                    queue.push_back(h.neighbor);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.bfs_distances(u)[v].expect("network is connected")
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// One non-lazy step from `v`: a half-edge chosen with probability
    /// proportional to its weight. Consumes exactly one draw.
    pub fn step<R: Rng + ?Sized>(&self, v: usize, rng: &mut R) -> HalfEdge {
        let hs = &self.adjacency[v];
        if self.unit_weights {
            hs[rng.gen_range(0..hs.len())]
        } else {
            let cum = &self.cumulative[v];
            let x = rng.gen::<f64>() * cum[cum.len() - 1];
            let i = cum.partition_point(|&c| c <= x).min(hs.len() - 1);
            hs[i]
        }
    }

    /// Whether every pair of distinct vertices has at most one edge and no
    /// vertex has a self-loop.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| {
            let key = (e.u.min(e.v), e.u.max(e.v));
            !e.is_loop() && seen.insert(key)
        })
    }
}

/// Sorted set of distinct vertex ids with its cached volume.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSet {
    ids: Vec<usize>,
    volume: f64,
}

impl VertexSet {
    pub fn new(g: &Network, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        for &v in &ids {
            g.check_vertex(v)?;
        }
        let volume = ids.iter().map(|&v| g.degree(v)).sum();
        Ok(VertexSet { ids, volume })
    }

    /// Like [`VertexSet::new`] but rejects the empty set.
    pub fn nonempty(g: &Network, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = Self::new(g, ids)?;
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(set)
    }

    pub fn singleton(g: &Network, v: usize) -> Result<Self> {
        Self::new(g, [v])
    }

    pub fn all(g: &Network) -> Self {
        VertexSet {
            ids: (0..g.vertex_count()).collect(),
            volume: g.volume(),
        }
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.ids {
            m[v] = true;
        }
        m
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.ids.iter().all(|&v| !other.contains(v))
    }

    pub fn union(&self, g: &Network, other: &VertexSet) -> VertexSet {
        VertexSet::new(g, self.ids.iter().chain(other.ids.iter()).copied())
            .expect("ids already validated")
    }

    pub fn stationary_mass(&self, g: &Network) -> f64 {
        self.volume / g.volume()
    }
}
