use nalgebra::DMatrix;

use crate::graph::Network;

/// Sparse lazy transition kernel `P = (I + K)/2`, rows aggregated so that
/// parallel edges and self-loops become single entries.
#[derive(Clone, Debug)]
pub struct LazyKernel {
    rows: Vec<Vec<(usize, f64)>>,
}

impl LazyKernel {
    pub fn new(g: &Network) -> Self {
        let n = g.vertex_count();
        let mut acc = vec![0.0; n];
        let mut touched = Vec::new();
        let rows = (0..n)
            .map(|u| {
                let d = g.degree(u);
                acc[u] += 0.5;
                touched.push(u);
                for h in g.neighbors(u) {
                    if acc[h.neighbor] == 0.0 {
                        touched.push(h.neighbor);
                    }
                    acc[h.neighbor] += 0.5 * h.weight / d;
                }
                touched.sort_unstable();
                touched.dedup();
                let row = touched.iter().map(|&v| (v, acc[v])).collect();
                for &v in &touched {
                    acc[v] = 0.0;
                }
                touched.clear();
                row
            })
            .collect();
        LazyKernel { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, u: usize) -> &[(usize, f64)] {
        &self.rows[u]
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `out = mu · P`.
    pub fn push_forward(&self, mu: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        for (u, row) in self.rows.iter().enumerate() {
            let m = mu[u];
            if m == 0.0 {
                continue;
            }
            for &(v, p) in row {
                out[v] += m * p;
            }
        }
    }

    /// `out = mu · P` restricted to the complement of `killed`: mass that
    /// lands on a killed vertex is dropped.
    pub fn push_forward_killed(&self, mu: &[f64], killed: &[bool], out: &mut [f64]) {
        self.push_forward(mu, out);
        for (x, &k) in out.iter_mut().zip(killed) {
            if k {
                *x = 0.0;
            }
        }
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for (u, row) in self.rows.iter().enumerate() {
            for &(v, p) in row {
                m[(u, v)] = p;
            }
        }
        m
    }

    /// Dense kernel restricted to the vertices listed in `keep` (in that order).
    pub fn dense_restricted(&self, keep: &[usize]) -> DMatrix<f64> {
        let n = self.size();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut m = DMatrix::zeros(keep.len(), keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for &(v, p) in &self.rows[u] {
                if index[v] != usize::MAX {
                    m[(i, index[v])] = p;
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contract, make_complete, VertexSet};

    #[test]
    fn rows_are_stochastic() {
        let k3 = make_complete(3).unwrap();
        let w = VertexSet::new(&k3, [0, 1]).unwrap();
        for g in [k3.clone(), contract(&k3, &w).unwrap()] {
            let p = LazyKernel::new(&g);
            for u in 0..g.vertex_count() {
                let s: f64 = p.row(u).iter().map(|e| e.1).sum();
                assert!((s - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn contracted_triangle_kernel() {
        // super-vertex 1 has a self-loop and two parallel edges to vertex 0
        let k3 = make_complete(3).unwrap();
        let c = contract(&k3, &VertexSet::new(&k3, [0, 1]).unwrap()).unwrap();
        let p = LazyKernel::new(&c).dense();
        assert!((p[(1, 1)] - (0.5 + 0.5 / 3.0)).abs() < 1e-15);
        assert!((p[(1, 0)] - 1.0 / 3.0).abs() < 1e-15);
        assert!((p[(0, 1)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn stationary_is_invariant() {
        let g = crate::graph::make_star(6).unwrap();
        let p = LazyKernel::new(&g);
        let pi = g.stationary();
        let mut out = vec![0.0; 6];
        p.push_forward(&pi, &mut out);
        for (a, b) in pi.iter().zip(&out) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
