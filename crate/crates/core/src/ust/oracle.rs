//! Exact spanning-tree oracles for small graphs: the matrix-tree count and
//! exhaustive enumeration, plus the laws derived from it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::forest::OrientedForest;
use crate::error::{Error, Result};
use crate::graph::{contract, EdgeId, Network, VertexSet};

pub const COUNT_CAP: usize = 64;
pub const ENUMERATION_CAP: usize = 10;
pub const MAX_ENUMERATED_TREES: u64 = 2_000_000;

/// Number of spanning trees counted with edge multiplicity (weights and
/// self-loops ignored), by a fraction-free determinant of the reduced
/// Laplacian.
pub fn spanning_tree_count(g: &Network) -> Result<BigInt> {
    let n = g.vertex_count();
    if n > COUNT_CAP {
        return Err(Error::BackendCapExceeded { n, cap: COUNT_CAP });
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let k = n - 1;
    let mut a = vec![vec![BigInt::zero(); k]; k];
    for e in g.edges() {
        if e.is_loop() {
            continue;
        }
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x < k {
                a[x][x] += 1;
                if y < k {
                    a[x][y] -= 1;
                }
            }
        }
    }
    Ok(bareiss_determinant(a))
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        if a[i][i].is_zero() {
            match (i + 1..k).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = (&a[r][c] * &a[i][i] - &a[r][i] * &a[i][c]) / &prev;
                a[r][c] = v;
            }
        }
        prev = a[i][i].clone();
    }
    sign * &a[k - 1][k - 1]
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((a, b));
        true
    }

    fn undo(&mut self) {
        let (a, b) = self.history.pop().expect("undo without union");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

/// Every spanning tree of `g` as a sorted list of edge ids, in
/// lexicographic order. Parallel edges give distinct trees.
pub fn enumerate_spanning_trees(g: &Network) -> Result<Vec<Vec<EdgeId>>> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::BackendCapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let count = spanning_tree_count(g)?;
    if count > BigInt::from(MAX_ENUMERATED_TREES) {
        return Err(Error::invalid(format!(
            "{count} spanning trees exceed the enumeration cap {MAX_ENUMERATED_TREES}"
        )));
    }
    let edges: Vec<(usize, usize, EdgeId)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_loop())
        .map(|(i, e)| (e.u, e.v, EdgeId(i)))
        .collect();
    let mut out = Vec::new();
    let mut picked = Vec::with_capacity(n - 1);
    let mut dsu = Dsu::new(n);
    descend(&edges, 0, n - 1, &mut picked, &mut dsu, &mut out);
    Ok(out)
}

fn descend(
    edges: &[(usize, usize, EdgeId)],
    i: usize,
    need: usize,
    picked: &mut Vec<EdgeId>,
    dsu: &mut Dsu,
    out: &mut Vec<Vec<EdgeId>>,
) {
    if picked.len() == need {
        out.push(picked.clone());
        return;
    }
    if edges.len() - i < need - picked.len() {
        return;
    }
    let (u, v, id) = edges[i];
    if dsu.union(u, v) {
        picked.push(id);
        descend(edges, i + 1, need, picked, dsu, out);
        picked.pop();
        dsu.undo();
    }
    descend(edges, i + 1, need, picked, dsu, out);
}

/// Exact weighted UST law: each spanning tree with probability
/// proportional to the product of its edge weights.
pub fn tree_law(g: &Network) -> Result<Vec<(Vec<EdgeId>, f64)>> {
    let trees = enumerate_spanning_trees(g)?;
    let weights: Vec<f64> = trees
        .iter()
        .map(|t| t.iter().map(|&e| g.edge(e).weight).product())
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(trees
        .into_iter()
        .zip(weights)
        .map(|(t, w)| (t, w / total))
        .collect())
}

/// Law of `UST(G/W)` as edge-id sets of `g` (contraction keeps ids).
pub fn wired_tree_law(g: &Network, w: &VertexSet) -> Result<Vec<(Vec<EdgeId>, f64)>> {
    if w.len() == 1 {
        return tree_law(g);
    }
    tree_law(&contract(g, w)?)
}

/// `P(e ∈ T)` for every edge id of `g` under a tree law.
pub fn edge_marginals(law: &[(Vec<EdgeId>, f64)], edge_count: usize) -> Vec<f64> {
    let mut p = vec![0.0; edge_count];
    for (tree, prob) in law {
        for e in tree {
            p[e.0] += prob;
        }
    }
    p
}

/// Exact law of the tree path from `u` to `v` (vertex sequences).
pub fn path_law(g: &Network, u: usize, v: usize) -> Result<Vec<(Vec<usize>, f64)>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let mut law: Vec<(Vec<usize>, f64)> = Vec::new();
    for (tree, p) in tree_law(g)? {
        let path = OrientedForest::from_edges(g, &tree, &[v])?.future(u);
        match law.iter_mut().find(|(q, _)| *q == path) {
            Some(entry) => entry.1 += p,
            None => law.push((path, p)),
        }
    }
    law.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(law)
}
