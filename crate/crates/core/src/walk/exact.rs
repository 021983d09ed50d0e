//! Exact backend: dense solves for Green functions, hitting times and
//! conductances (up to [`DENSE_CAP`] vertices) and sparse forward iteration
//! for `p^t` and capacities (up to [`SPARSE_CAP`] vertices).

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::kernel::LazyKernel;
use crate::error::{Error, Result};
use crate::graph::{Network, VertexSet};

pub const DENSE_CAP: usize = 4096;
pub const SPARSE_CAP: usize = 65536;

/// Number of single sparse steps tried before the mixing scan switches to
/// repeated squaring.
const MIXING_STEP_BUDGET: usize = 256;

/// Eigen-components with `λ^t` below this are dropped from diagonal sums.
const SPECTRAL_CUTOFF: f64 = 1e-22;

/// Additive tolerance for the truncated tail of the `W`-bubble sum.
pub const W_BUBBLE_TAIL: f64 = 1e-9;

fn check_cap(g: &Network, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > cap {
        Err(Error::BackendCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

fn check_set(g: &Network, set: &VertexSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.ids().iter().try_for_each(|&v| g.check_vertex(v))
}

/// Row `p^t(u, ·)` of the lazy kernel.
pub fn transition_row(g: &Network, u: usize, t: usize) -> Result<Vec<f64>> {
    check_cap(g, SPARSE_CAP)?;
    g.check_vertex(u)?;
    let kernel = LazyKernel::new(g);
    let n = g.vertex_count();
    let mut mu = vec![0.0; n];
    mu[u] = 1.0;
    let mut next = vec![0.0; n];
    for _ in 0..t {
        kernel.push_forward(&mu, &mut next);
        std::mem::swap(&mut mu, &mut next);
    }
    Ok(mu)
}

/// `p^t(u, v)`.
pub fn transition_probability(g: &Network, u: usize, v: usize, t: usize) -> Result<f64> {
    g.check_vertex(v)?;
    Ok(transition_row(g, u, t)?[v])
}

/// `(1/2) Σ |μ(v) − ν(v)|`.
pub fn tv_distance(mu: &[f64], nu: &[f64]) -> Result<f64> {
    if mu.len() != nu.len() {
        return Err(Error::invalid(format!(
            "supports differ in size: {} vs {}",
            mu.len(),
            nu.len()
        )));
    }
    for (name, d) in [("mu", mu), ("nu", nu)] {
        let s: f64 = d.iter().sum();
        if (s - 1.0).abs() > 1e-9 || d.iter().any(|&x| x < -1e-12) {
            return Err(Error::invalid(format!(
                "{name} is not a probability vector (sum {s})"
            )));
        }
    }
    Ok(0.5 * mu.iter().zip(nu).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

// max_{u,v} |M(u,v)/π(v) − 1| over a dense row-stochastic matrix.
fn uniform_distance(m: &DMatrix<f64>, pi: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for v in 0..m.ncols() {
        for u in 0..m.nrows() {
            worst = worst.max((m[(u, v)] / pi[v] - 1.0).abs());
        }
    }
    worst
}

fn step_dense(kernel: &LazyKernel, m: &DMatrix<f64>) -> DMatrix<f64> {
    // rows of m are distributions; returns m · P
    let n = m.nrows();
    let mut out = DMatrix::zeros(n, n);
    let mut row = vec![0.0; n];
    let mut next = vec![0.0; n];
    for u in 0..n {
        for v in 0..n {
            row[v] = m[(u, v)];
        }
        kernel.push_forward(&row, &mut next);
        for v in 0..n {
            out[(u, v)] = next[v];
        }
    }
    out
}

/// Smallest `t` with `max_{u,v} |p^t(u,v)/π(v) − 1| ≤ 1/2`.
///
/// Single sparse steps are tried first; slow chains switch to galloping over
/// the powers `P^(2^j)` followed by a binary descent, which is valid because
/// the set of failing times is an initial segment.
pub fn uniform_mixing_time(g: &Network) -> Result<usize> {
    check_cap(g, DENSE_CAP)?;
    let n = g.vertex_count();
    let pi = g.stationary();
    let kernel = LazyKernel::new(g);
    let mixed = |m: &DMatrix<f64>| uniform_distance(m, &pi) <= 0.5;

    let mut cur = DMatrix::<f64>::identity(n, n);
    let mut t = 0usize;
    while t < MIXING_STEP_BUDGET {
        if mixed(&cur) {
            debug_assert!(mixed(&step_dense(&kernel, &cur)));
            return Ok(t);
        }
        cur = step_dense(&kernel, &cur);
        t += 1;
    }
    if mixed(&cur) {
        return Ok(t);
    }

    // cur = P^t fails.
    let mut powers = vec![kernel.dense()];
    loop {
        let j = powers.len() - 1;
        let cand = &cur * &powers[j];
        if mixed(&cand) {
            break;
        }
        cur = cand;
        t += 1 << j;
        let sq = &powers[j] * &powers[j];
        powers.push(sq);
    }
    for j in (0..powers.len()).rev() {
        let cand = &cur * &powers[j];
        if !mixed(&cand) {
            cur = cand;
            t += 1 << j;
        }
    }
    let t_mix = t + 1;
    debug_assert!(mixed(&step_dense(&kernel, &(&cur * &powers[0]))));
    Ok(t_mix)
}

/// `p^t(v,v)` for all `v` through the spectral decomposition of the
/// symmetrised (possibly killed) lazy kernel.
struct SpectralDiagonal {
    // eigenvalues sorted by decreasing magnitude, with squared eigenvectors
    lambdas: Vec<f64>,
    squares: Vec<Vec<f64>>,
}

impl SpectralDiagonal {
    /// `kernel` restricted to `keep`, symmetrised with `π`.
    fn new(kernel: &LazyKernel, keep: &[usize], pi: &[f64]) -> Self {
        let mut s = kernel.dense_restricted(keep);
        let k = keep.len();
        for i in 0..k {
            for j in 0..k {
                s[(i, j)] *= (pi[keep[i]] / pi[keep[j]]).sqrt();
            }
        }
        // reversibility makes s symmetric up to rounding
        let s = (&s + s.transpose()) * 0.5;
        let eig = SymmetricEigen::new(s);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .abs()
                .total_cmp(&eig.eigenvalues[a].abs())
        });
        let lambdas = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let squares = order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().map(|x| x * x).collect())
            .collect();
        SpectralDiagonal { lambdas, squares }
    }

    fn spectral_radius(&self) -> f64 {
        self.lambdas.first().map_or(0.0, |l| l.abs())
    }

    fn sup_diagonal(&self, t: usize) -> f64 {
        let k = self.squares.first().map_or(0, Vec::len);
        let mut diag = vec![0.0; k];
        for (lambda, sq) in self.lambdas.iter().zip(&self.squares) {
            let w = lambda.powi(t as i32);
            if w.abs() < SPECTRAL_CUTOFF {
                break;
            }
            for (d, s) in diag.iter_mut().zip(sq) {
                *d += w * s;
            }
        }
        diag.into_iter().fold(0.0, f64::max)
    }
}

/// Bubble sum truncated at the mixing time and at `√n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BubbleSum {
    /// `Σ_{t=0}^{t_mix} (t+1) sup_v p^t(v,v)`.
    pub value: f64,
    /// `Σ_{t=0}^{⌊√n⌋} (t+1) sup_v p^t(v,v)`.
    pub truncated_sqrt_n: f64,
    pub t_mix: usize,
}

pub fn bubble_sum(g: &Network) -> Result<BubbleSum> {
    check_cap(g, DENSE_CAP)?;
    let n = g.vertex_count();
    let t_mix = uniform_mixing_time(g)?;
    let sqrt_n = (n as f64).sqrt().floor() as usize;
    let all: Vec<usize> = (0..n).collect();
    let spectral = SpectralDiagonal::new(&LazyKernel::new(g), &all, &g.stationary());
    let mut value = 0.0;
    let mut truncated = 0.0;
    for t in 0..=t_mix.max(sqrt_n) {
        let term = (t + 1) as f64
            * if t == 0 {
                1.0
            } else {
                spectral.sup_diagonal(t)
            };
        if t <= t_mix {
            value += term;
        }
        if t <= sqrt_n {
            truncated += term;
        }
    }
    Ok(BubbleSum {
        value,
        truncated_sqrt_n: truncated,
        t_mix,
    })
}

/// `Cap_r(U) = P_π(τ_U < r)` by forward iteration of the killed chain.
pub fn capacity_exact(g: &Network, u_set: &VertexSet, r: usize) -> Result<f64> {
    check_cap(g, SPARSE_CAP)?;
    check_set(g, u_set)?;
    if r == 0 {
        return Err(Error::invalid("capacity needs r >= 1"));
    }
    let n = g.vertex_count();
    let killed = u_set.mask(n);
    let kernel = LazyKernel::new(g);
    let mut mass: Vec<f64> = g
        .stationary()
        .into_iter()
        .zip(&killed)
        .map(|(p, &k)| if k { 0.0 } else { p })
        .collect();
    let mut next = vec![0.0; n];
    for _ in 1..r {
        kernel.push_forward_killed(&mass, &killed, &mut next);
        std::mem::swap(&mut mass, &mut next);
    }
    let survive: f64 = mass.iter().sum();
    Ok((1.0 - survive).clamp(0.0, 1.0))
}

/// `Close_r(U₁, U₂) = P_π(τ_{U₁} < r and τ_{U₂} < r)` by inclusion–exclusion
/// over three capacities.
pub fn closeness_exact(g: &Network, u1: &VertexSet, u2: &VertexSet, r: usize) -> Result<f64> {
    let a = capacity_exact(g, u1, r)?;
    let b = capacity_exact(g, u2, r)?;
    let both = capacity_exact(g, &u1.union(g, u2), r)?;
    Ok((a + b - both).clamp(0.0, a.min(b)))
}

/// `P_u(τ_U < t)` for a point start.
fn hit_before(g: &Network, u: usize, u_set: &VertexSet, t: usize) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let n = g.vertex_count();
    let killed = u_set.mask(n);
    if killed[u] {
        return 1.0;
    }
    let kernel = LazyKernel::new(g);
    let mut mass = vec![0.0; n];
    mass[u] = 1.0;
    let mut next = vec![0.0; n];
    for _ in 1..t {
        kernel.push_forward_killed(&mass, &killed, &mut next);
        std::mem::swap(&mut mass, &mut next);
    }
    (1.0 - mass.iter().sum::<f64>()).clamp(0.0, 1.0)
}

/// Dense LU of `I − Q` for the kernel killed on `w`, with the order of the
/// surviving vertices.
fn killed_system(g: &Network, w: &VertexSet) -> (Vec<usize>, DMatrix<f64>) {
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| !w.contains(v)).collect();
    let q = LazyKernel::new(g).dense_restricted(&keep);
    let a = DMatrix::identity(keep.len(), keep.len()) - q;
    (keep, a)
}

/// Green function of the lazy walk killed on entering `W`.
#[derive(Clone, Debug)]
pub struct GreenFunction {
    index: Vec<Option<usize>>,
    matrix: DMatrix<f64>,
}

impl GreenFunction {
    /// `G_W(u, v)`; zero whenever `u` or `v` lies in `W`.
    pub fn get(&self, u: usize, v: usize) -> f64 {
        match (self.index[u], self.index[v]) {
            (Some(i), Some(j)) => self.matrix[(i, j)],
            _ => 0.0,
        }
    }

    pub fn row_sum(&self, u: usize) -> f64 {
        self.index[u].map_or(0.0, |i| self.matrix.row(i).sum())
    }

    pub fn vertex_count(&self) -> usize {
        self.index.len()
    }
}

pub fn green_killed(g: &Network, w: &VertexSet) -> Result<GreenFunction> {
    check_cap(g, DENSE_CAP)?;
    check_set(g, w)?;
    let (keep, a) = killed_system(g, w);
    let mut index = vec![None; g.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = Some(i);
    }
    let matrix = if keep.is_empty() {
        DMatrix::zeros(0, 0)
    } else {
        a.lu()
            .try_inverse()
            .ok_or_else(|| Error::invalid("killed system is singular"))?
    };
    Ok(GreenFunction { index, matrix })
}

/// `E_u[τ_W]` for every `u` (zero on `W`), by one linear solve.
pub fn expected_hitting_times(g: &Network, w: &VertexSet) -> Result<Vec<f64>> {
    check_cap(g, DENSE_CAP)?;
    check_set(g, w)?;
    let (keep, a) = killed_system(g, w);
    let mut out = vec![0.0; g.vertex_count()];
    if keep.is_empty() {
        return Ok(out);
    }
    let h = a
        .lu()
        .solve(&DVector::from_element(keep.len(), 1.0))
        .ok_or_else(|| Error::invalid("killed system is singular"))?;
    for (i, &v) in keep.iter().enumerate() {
        out[v] = h[i];
    }
    Ok(out)
}

/// `M_W(S) = Σ_{u,v ∈ S} d(u) G_W(u, v)`.
pub fn m_w(g: &Network, w: &VertexSet, s: &VertexSet) -> Result<f64> {
    let green = green_killed(g, w)?;
    Ok(s.ids()
        .iter()
        .map(|&u| g.degree(u) * s.ids().iter().map(|&v| green.get(u, v)).sum::<f64>())
        .sum())
}

/// Probability that the walk started at each vertex hits `s` before `w`
/// (one on `s`, zero on `w`).
fn harmonic_measure(g: &Network, w: &VertexSet, s: &VertexSet) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    let mut h = vec![0.0; n];
    for &v in s.ids() {
        h[v] = 1.0;
    }
    let interior: Vec<usize> = (0..n)
        .filter(|&v| !w.contains(v) && !s.contains(v))
        .collect();
    if interior.is_empty() {
        return Ok(h);
    }
    let mut index = vec![usize::MAX; n];
    for (i, &v) in interior.iter().enumerate() {
        index[v] = i;
    }
    let k = interior.len();
    let mut a = DMatrix::<f64>::identity(k, k);
    let mut b = DVector::<f64>::zeros(k);
    for (i, &x) in interior.iter().enumerate() {
        let d = g.degree(x);
        for half in g.neighbors(x) {
            let p = half.weight / d;
            let y = half.neighbor;
            if index[y] != usize::MAX {
                a[(i, index[y])] -= p;
            } else {
                b[i] += p * h[y];
            }
        }
    }
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::invalid("harmonic system is singular"))?;
    for (i, &x) in interior.iter().enumerate() {
        h[x] = sol[i];
    }
    Ok(h)
}

/// `C_eff(W ↔ S) = Vol(W) · P_W(τ_S < τ_W⁺)` with the escape probability of
/// the walk on `G/W` that only counts moves (holds are not returns). This is
/// the classical electrical conductance: a single unit edge gives 1 and `k`
/// parallel unit edges give `k`.
pub fn effective_conductance(g: &Network, w: &VertexSet, s: &VertexSet) -> Result<f64> {
    check_cap(g, DENSE_CAP)?;
    check_set(g, w)?;
    check_set(g, s)?;
    if !w.is_disjoint(s) {
        return Err(Error::Overlap);
    }
    let h = harmonic_measure(g, w, s)?;
    // first step out of the contracted vertex: edge weight over Vol(W); edges
    // that stay inside W return immediately and contribute zero
    Ok(w.ids()
        .iter()
        .flat_map(|&u| g.neighbors(u).iter())
        .map(|half| half.weight * h[half.neighbor])
        .sum())
}

/// `B_W(G) = Σ_{t≥0} (t+1) sup_v p⃗_W^t(v,v)` where `p⃗_W^t(v,v)` vanishes for
/// `v ∈ W`. The series is summed until the geometric tail bound built from
/// the killed kernel's spectral radius drops below [`W_BUBBLE_TAIL`].
pub fn w_bubble_sum(g: &Network, w: &VertexSet) -> Result<f64> {
    check_cap(g, DENSE_CAP)?;
    check_set(g, w)?;
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| !w.contains(v)).collect();
    if keep.is_empty() {
        return Ok(0.0);
    }
    let spectral = SpectralDiagonal::new(&LazyKernel::new(g), &keep, &g.stationary());
    let rho = spectral.spectral_radius();
    if rho >= 1.0 {
        return Err(Error::invalid(
            "killed kernel is not strictly substochastic",
        ));
    }
    let tail = |t: usize| {
        // Σ_{s≥t} (s+1) ρ^s
        let tt = t as f64;
        rho.powf(tt) * ((tt + 1.0) * (1.0 - rho) + rho) / (1.0 - rho).powi(2)
    };
    let mut total = 0.0;
    let mut t = 0;
    while tail(t) >= W_BUBBLE_TAIL {
        total += (t + 1) as f64
            * if t == 0 {
                1.0
            } else {
                spectral.sup_diagonal(t)
            };
        t += 1;
    }
    Ok(total)
}

/// `Σ_{t=0}^{depth} (t+1) sup_v p⃗_W^t(v,v)` by explicit sparse iteration of
/// every row of the killed kernel.
pub fn w_bubble_sum_truncated(g: &Network, w: &VertexSet, depth: usize) -> Result<f64> {
    check_cap(g, DENSE_CAP)?;
    check_set(g, w)?;
    let n = g.vertex_count();
    let killed = w.mask(n);
    let kernel = LazyKernel::new(g);
    let starts: Vec<usize> = (0..n).filter(|&v| !killed[v]).collect();
    if starts.is_empty() {
        return Ok(0.0);
    }
    let mut rows: Vec<Vec<f64>> = starts
        .iter()
        .map(|&v| {
            let mut r = vec![0.0; n];
            r[v] = 1.0;
            r
        })
        .collect();
    let mut next = vec![0.0; n];
    let mut total = 1.0;
    for t in 1..=depth {
        let mut sup: f64 = 0.0;
        for (row, &v) in rows.iter_mut().zip(&starts) {
            kernel.push_forward_killed(row, &killed, &mut next);
            std::mem::swap(row, &mut next);
            sup = sup.max(row[v]);
        }
        total += (t + 1) as f64 * sup;
    }
    Ok(total)
}

/// Target time `t_⊙^u = Σ_v π(v) E_u[τ_v]` for every `u`, from the
/// fundamental matrix `Z = (I − P + 1π)^{-1}` and `E_u τ_v = (Z_vv − Z_uv)/π_v`.
pub fn target_times(g: &Network) -> Result<Vec<f64>> {
    check_cap(g, DENSE_CAP)?;
    let n = g.vertex_count();
    let pi = g.stationary();
    let p = LazyKernel::new(g).dense();
    let mut a = DMatrix::<f64>::identity(n, n) - p;
    for u in 0..n {
        for v in 0..n {
            a[(u, v)] += pi[v];
        }
    }
    let z = a
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::invalid("fundamental matrix is singular"))?;
    let trace: f64 = (0..n).map(|v| z[(v, v)]).sum();
    Ok((0..n).map(|u| trace - z.row(u).sum()).collect())
}

pub fn target_time(g: &Network, u: usize) -> Result<f64> {
    g.check_vertex(u)?;
    Ok(target_times(g)?[u])
}

/// Both sides of `P_u(τ_U < t) ≥ Cap_r(U)/3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HittingLowerReport {
    pub hit_probability: f64,
    pub capacity: f64,
    /// `Cap_r(U)/3`.
    pub bound: f64,
    pub holds: bool,
    pub t_mix: usize,
    /// Whether `r ≥ ln(n)·t_mix`; below that the inequality is not promised.
    pub hypothesis_met: bool,
}

pub fn hitting_probability_lower(
    g: &Network,
    u: usize,
    u_set: &VertexSet,
    t: usize,
    r: usize,
) -> Result<HittingLowerReport> {
    check_cap(g, DENSE_CAP)?;
    g.check_vertex(u)?;
    let capacity = capacity_exact(g, u_set, r)?;
    let hit_probability = hit_before(g, u, u_set, t);
    let t_mix = uniform_mixing_time(g)?;
    let bound = capacity / 3.0;
    Ok(HittingLowerReport {
        hit_probability,
        capacity,
        bound,
        holds: hit_probability >= bound,
        t_mix,
        hypothesis_met: r as f64 >= (g.vertex_count() as f64).ln() * t_mix as f64,
    })
}

/// Whether `1/(2Dn) ≤ p^t(u,v) ≤ 2D/n` for every pair, with `D` the balance
/// ratio of `g`.
pub fn mixing_bounds_hold(g: &Network, t: usize) -> Result<bool> {
    check_cap(g, DENSE_CAP)?;
    let n = g.vertex_count() as f64;
    let d = g.balance();
    let (lo, hi) = (1.0 / (2.0 * d * n), 2.0 * d / n);
    for u in 0..g.vertex_count() {
        let row = transition_row(g, u, t)?;
        if row.iter().any(|&p| p < lo - 1e-15 || p > hi + 1e-15) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_hypercube, make_path, Edge};

    // p^t by dense matrix power, independent of the sparse iteration
    fn matrix_power(g: &Network, t: usize) -> DMatrix<f64> {
        let p = LazyKernel::new(g).dense();
        let mut m = DMatrix::identity(g.vertex_count(), g.vertex_count());
        for _ in 0..t {
            m = &m * &p;
        }
        m
    }

    fn set(g: &Network, ids: &[usize]) -> VertexSet {
        VertexSet::new(g, ids.iter().copied()).unwrap()
    }

    #[test]
    fn transition_small_cases() {
        let k3 = make_complete(3).unwrap();
        assert_eq!(transition_probability(&k3, 0, 0, 0).unwrap(), 1.0);
        assert_eq!(transition_probability(&k3, 0, 1, 0).unwrap(), 0.0);
        assert!((transition_probability(&k3, 0, 1, 1).unwrap() - 0.25).abs() < 1e-15);
        let p2 = transition_probability(&k3, 0, 0, 2).unwrap();
        assert!((p2 - 0.375).abs() < 1e-15);
        assert!((matrix_power(&k3, 2)[(0, 0)] - 0.375).abs() < 1e-15);
    }

    #[test]
    fn tv_distance_cases() {
        assert_eq!(tv_distance(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(tv_distance(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), 0.5);
        assert!(tv_distance(&[1.0], &[0.5, 0.5]).is_err());
        assert!(tv_distance(&[0.7, 0.7], &[0.5, 0.5]).is_err());
    }

    // brute force: first t at which the dense power is within 1/2
    fn mixing_oracle(g: &Network) -> usize {
        let pi = g.stationary();
        let p = LazyKernel::new(g).dense();
        let mut m = DMatrix::identity(g.vertex_count(), g.vertex_count());
        let mut t = 0;
        while uniform_distance(&m, &pi) > 0.5 {
            m = &m * &p;
            t += 1;
        }
        t
    }

    #[test]
    fn mixing_time_k2() {
        // p^1 = [[1/2,1/2],[1/2,1/2]] is already stationary, p^0 is at distance 1
        let k2 = make_complete(2).unwrap();
        assert_eq!(mixing_oracle(&k2), 1);
        assert_eq!(uniform_mixing_time(&k2).unwrap(), 1);
    }

    #[test]
    fn mixing_time_complete_graphs() {
        // lazy K_n: p^t(u,u)/π − 1 = (n−1)λ^t with λ = (n−2)/(2(n−1))
        for (n, expected) in [(8, 4), (16, 5), (32, 6)] {
            let g = make_complete(n).unwrap();
            assert_eq!(mixing_oracle(&g), expected);
            assert_eq!(uniform_mixing_time(&g).unwrap(), expected);
        }
    }

    #[test]
    fn mixing_time_path_grows_superlinearly() {
        let t16 = uniform_mixing_time(&make_path(16).unwrap()).unwrap();
        let t32 = uniform_mixing_time(&make_path(32).unwrap()).unwrap();
        assert_eq!(t16, mixing_oracle(&make_path(16).unwrap()));
        assert_eq!(t32, mixing_oracle(&make_path(32).unwrap()));
        assert!(t32 > 2 * t16, "t16 = {t16}, t32 = {t32}");
    }

    #[test]
    fn mixing_time_uses_squaring_branch_correctly() {
        // path on 64 vertices mixes well beyond the single-step budget
        let g = make_path(64).unwrap();
        let t = uniform_mixing_time(&g).unwrap();
        assert!(t > MIXING_STEP_BUDGET);
        assert_eq!(t, mixing_oracle(&g));
    }

    fn bubble_oracle(g: &Network, upto: usize) -> f64 {
        let p = LazyKernel::new(g).dense();
        let mut m = DMatrix::identity(g.vertex_count(), g.vertex_count());
        let mut total = 0.0;
        for t in 0..=upto {
            let sup = (0..g.vertex_count()).map(|v| m[(v, v)]).fold(0.0, f64::max);
            total += (t + 1) as f64 * sup;
            m = &m * &p;
        }
        total
    }

    #[test]
    fn bubble_sum_matches_naive_summation() {
        let k16 = make_complete(16).unwrap();
        let b = bubble_sum(&k16).unwrap();
        assert!((b.value - bubble_oracle(&k16, b.t_mix)).abs() < 1e-10);
        assert!((b.truncated_sqrt_n - bubble_oracle(&k16, 4)).abs() < 1e-10);
    }

    #[test]
    fn bubble_sum_zero_mixing_time() {
        // single vertex with a self-loop: π = 1 so t_mix = 0 and only t = 0 counts
        let g = Network::new(1, vec![Edge::unit(0, 0)]).unwrap();
        let b = bubble_sum(&g).unwrap();
        assert_eq!(b.t_mix, 0);
        assert!((b.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bubble_sum_hypercube_below_path() {
        let cube = bubble_sum(&make_hypercube(8).unwrap()).unwrap();
        let path = bubble_sum(&make_path(256).unwrap()).unwrap();
        assert!(cube.value < path.value, "{} vs {}", cube.value, path.value);
    }

    #[test]
    fn capacity_small_cases() {
        let k3 = make_complete(3).unwrap();
        let u = set(&k3, &[0]);
        assert!((capacity_exact(&k3, &u, 1).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((capacity_exact(&k3, &u, 2).unwrap() - 0.5).abs() < 1e-15);
        let all = VertexSet::all(&k3);
        assert!((capacity_exact(&k3, &all, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((capacity_exact(&k3, &all, 7).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            capacity_exact(&k3, &set(&k3, &[]), 2),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn closeness_small_cases() {
        let k3 = make_complete(3).unwrap();
        let a = set(&k3, &[0]);
        let b = set(&k3, &[1]);
        assert!(closeness_exact(&k3, &a, &b, 1).unwrap().abs() < 1e-15);
        let same = closeness_exact(&k3, &a, &a, 4).unwrap();
        assert!((same - capacity_exact(&k3, &a, 4).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn green_function_k2() {
        let k2 = make_complete(2).unwrap();
        let w = set(&k2, &[1]);
        let green = green_killed(&k2, &w).unwrap();
        assert!((green.get(0, 0) - 2.0).abs() < 1e-12);
        assert_eq!(green.get(1, 0), 0.0);
        assert_eq!(green.get(0, 1), 0.0);
        assert!((expected_hitting_times(&k2, &w).unwrap()[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn green_row_sums_are_hitting_times() {
        let g = make_cycle(7).unwrap();
        let w = set(&g, &[0, 3]);
        let green = green_killed(&g, &w).unwrap();
        let h = expected_hitting_times(&g, &w).unwrap();
        for (u, hu) in h.iter().enumerate() {
            assert!((green.row_sum(u) - hu).abs() < 1e-10);
        }
    }

    #[test]
    fn m_w_cases() {
        let g = make_cycle(6).unwrap();
        let w = set(&g, &[0]);
        assert_eq!(m_w(&g, &w, &set(&g, &[0])).unwrap(), 0.0);
        let small = m_w(&g, &w, &set(&g, &[2])).unwrap();
        let big = m_w(&g, &w, &set(&g, &[2, 3])).unwrap();
        assert!(small <= big);
    }

    #[test]
    fn conductance_electrical_cases() {
        let k2 = make_complete(2).unwrap();
        let c = effective_conductance(&k2, &set(&k2, &[0]), &set(&k2, &[1])).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        let par = Network::from_unit_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let c = effective_conductance(&par, &set(&par, &[0]), &set(&par, &[1])).unwrap();
        assert!((c - 3.0).abs() < 1e-12);
        // series: two unit edges give 1/2
        let p3 = make_path(3).unwrap();
        let c = effective_conductance(&p3, &set(&p3, &[0]), &set(&p3, &[2])).unwrap();
        assert!((c - 0.5).abs() < 1e-12);
        assert!(matches!(
            effective_conductance(&p3, &set(&p3, &[0, 1]), &set(&p3, &[1])),
            Err(Error::Overlap)
        ));
    }

    #[test]
    fn w_bubble_sum_conventions() {
        let g = make_hypercube(3).unwrap();
        assert_eq!(w_bubble_sum(&g, &VertexSet::all(&g)).unwrap(), 0.0);
        let b = w_bubble_sum(&g, &set(&g, &[0])).unwrap();
        assert!(b >= 1.0);
    }

    #[test]
    fn w_bubble_sum_self_consistent_truncation() {
        let g = make_hypercube(6).unwrap();
        let w = set(&g, &[0, 21, 42, 63]);
        let full = w_bubble_sum(&g, &w).unwrap();
        let depth = 4000;
        let a = w_bubble_sum_truncated(&g, &w, depth).unwrap();
        let b = w_bubble_sum_truncated(&g, &w, 2 * depth).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        assert!((full - b).abs() < 1e-8, "{full} vs {b}");
    }

    #[test]
    fn target_time_k2_and_complete_growth() {
        let k2 = make_complete(2).unwrap();
        assert!((target_time(&k2, 0).unwrap() - 1.0).abs() < 1e-12);
        let t16 = target_time(&make_complete(16).unwrap(), 0).unwrap();
        let t32 = target_time(&make_complete(32).unwrap(), 0).unwrap();
        // E_u τ_v = 2(n−1) on the lazy complete graph
        assert!((t16 - 2.0 * 225.0 / 16.0).abs() < 1e-9);
        assert!(((t32 / t16) / 2.0 - 1.0).abs() < 0.15);
    }

    #[test]
    fn hitting_lower_full_set() {
        let g = make_hypercube(3).unwrap();
        let rep = hitting_probability_lower(&g, 0, &VertexSet::all(&g), 3, 3).unwrap();
        assert_eq!(rep.hit_probability, 1.0);
        assert!(rep.holds);
    }

    #[test]
    fn mixing_bounds_on_complete_graph() {
        let g = make_complete(12).unwrap();
        let t = uniform_mixing_time(&g).unwrap();
        assert!(mixing_bounds_hold(&g, t).unwrap());
        assert!(!mixing_bounds_hold(&g, 0).unwrap());
    }
}
