//! Graph families.
//!
//! Id conventions: tori are row-major (`id = Σ x_i m^(d-1-i)`), hypercube
//! vertices are the integer value of their bitstring, and everything else
//! numbers vertices in construction order as documented per generator.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, Network};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// Rejection rounds allowed before the pairing model gives up.
pub const MAX_PAIRING_ROUNDS: usize = 10_000;

/// `Z_m^d` with nearest-neighbour edges.
pub fn make_torus(d: u32, m: usize) -> Result<Network> {
    if d == 0 {
        return Err(Error::invalid("torus dimension must be at least 1"));
    }
    if m < 3 {
        return Err(Error::invalid(format!(
            "torus side {m} < 3 would create parallel edges; use make_hypercube for side 2"
        )));
    }
    let n = m
        .checked_pow(d)
        .ok_or_else(|| Error::invalid(format!("{m}^{d} overflows")))?;
    let mut edges = Vec::with_capacity(n * d as usize);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..d {
            let coord = (v / stride) % m;
            let next = if coord + 1 == m {
                v - coord * stride
            } else {
                v + stride
            };
            edges.push(Edge::unit(v, next));
            stride *= m;
        }
    }
    Network::new(n, edges)
}

/// `{0,1}^m` with edges between bitstrings at Hamming distance one.
pub fn make_hypercube(m: u32) -> Result<Network> {
    if m == 0 || m >= usize::BITS - 1 {
        return Err(Error::invalid(format!(
            "hypercube dimension {m} out of range"
        )));
    }
    let n = 1usize << m;
    let mut edges = Vec::with_capacity(n * m as usize / 2);
    for v in 0..n {
        for i in 0..m {
            let bit = 1usize << i;
            if v & bit == 0 {
                edges.push(Edge::unit(v, v | bit));
            }
        }
    }
    Network::new(n, edges)
}

/// Uniform simple connected `k`-regular graph from the pairing model with
/// whole-graph rejection of loops, multi-edges and disconnected outcomes.
pub fn make_random_regular(n: usize, k: usize, seed: u64) -> Result<Network> {
    if k < 3 {
        return Err(Error::invalid(format!("degree {k} < 3")));
    }
    if n <= k {
        return Err(Error::invalid(format!("need n > k, got n = {n}, k = {k}")));
    }
    if !(n * k).is_multiple_of(2) {
        return Err(Error::invalid(format!("n * k = {} is odd", n * k)));
    }
    let mut rng = seeded(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    'round: for _ in 0..MAX_PAIRING_ROUNDS {
        points.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(n * k / 2);
        let mut edges = Vec::with_capacity(n * k / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'round;
            }
            edges.push(Edge::unit(u, v));
        }
        edges.sort_by_key(|e| (e.u, e.v));
        match Network::new(n, edges) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RejectionLimit {
        rounds: MAX_PAIRING_ROUNDS,
    })
}

pub fn make_complete(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::invalid("complete graph needs n >= 2"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push(Edge::unit(u, v));
        }
    }
    Network::new(n, edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::invalid("path needs n >= 2"));
    }
    Network::new(n, (0..n - 1).map(|i| Edge::unit(i, i + 1)).collect())
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn make_cycle(n: usize) -> Result<Network> {
    if n < 3 {
        return Err(Error::invalid("cycle needs n >= 3"));
    }
    Network::new(n, (0..n).map(|i| Edge::unit(i, (i + 1) % n)).collect())
}

/// Star with center `0` and leaves `1..n`.
pub fn make_star(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::invalid("star needs n >= 2"));
    }
    Network::new(n, (1..n).map(|i| Edge::unit(0, i)).collect())
}

/// Cliques on `0..⌊n/2⌋` and `⌊n/2⌋..n` joined by the bridge `{0, ⌊n/2⌋}`,
/// which is the last edge.
pub fn make_two_cliques(n: usize) -> Result<Network> {
    if n < 4 {
        return Err(Error::invalid("two cliques need n >= 4"));
    }
    let h = n / 2;
    let mut edges = Vec::new();
    for (lo, hi) in [(0, h), (h, n)] {
        for u in lo..hi {
            for v in u + 1..hi {
                edges.push(Edge::unit(u, v));
            }
        }
    }
    edges.push(Edge::unit(0, h));
    Network::new(n, edges)
}

/// Random 3-regular expander on `h ≈ n / ln n` vertices (rounded to even)
/// with a pendant path of `⌊ln n⌋` extra vertices hanging off each of them.
/// Expander vertices are `0..h`; the path of vertex `x` occupies
/// `h + x·len .. h + (x+1)·len`, nearest to `x` first.
pub fn make_expander_with_paths(n: usize, seed: u64) -> Result<Network> {
    if n < 16 {
        return Err(Error::invalid("expander with paths needs n >= 16"));
    }
    let ln = (n as f64).ln();
    let len = ln.floor().max(1.0) as usize;
    let mut h = ((n as f64 / ln).round() as usize).max(4);
    if h % 2 == 1 {
        h += 1;
    }
    let core = make_random_regular(h, 3, seed)?;
    let mut edges = core.edges().to_vec();
    for x in 0..h {
        let base = h + x * len;
        edges.push(Edge::unit(x, base));
        for j in 1..len {
            edges.push(Edge::unit(base + j - 1, base + j));
        }
    }
    Network::new(h * (1 + len), edges)
}

/// Random connected simple graph: a random recursive tree (vertex `v`
/// attaches to a uniform earlier vertex) plus every other pair independently
/// with probability `p`.
pub fn make_random_connected(n: usize, p: f64, seed: u64) -> Result<Network> {
    if n == 0 {
        return Err(Error::invalid("graph needs at least one vertex"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = seeded(seed);
    let mut adjacent = HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        adjacent.insert((u, v));
        edges.push(Edge::unit(u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !adjacent.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push(Edge::unit(u, v));
            }
        }
    }
    Network::new(n, edges)
}

/// The cheap counterexample families used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ControlKind {
    Path,
    Star,
    TwoCliques,
    ExpanderWithPaths,
}

pub fn make_negative_controls(kind: ControlKind, n: usize, seed: u64) -> Result<Network> {
    if n < 4 {
        return Err(Error::invalid("negative controls need n >= 4"));
    }
    match kind {
        ControlKind::Path => make_path(n),
        ControlKind::Star => make_star(n),
        ControlKind::TwoCliques => make_two_cliques(n),
        ControlKind::ExpanderWithPaths => make_expander_with_paths(n, seed),
    }
}
