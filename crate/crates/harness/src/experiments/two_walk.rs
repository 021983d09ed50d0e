use rand::Rng;
use ustlab_core::rng::seeded;
use ustlab_core::ust::cut_points;
use ustlab_core::walk::{capacity_exact, closeness_exact, sample_lazy_walk, StationarySampler};
use ustlab_core::{Estimate, Network, VertexSet, WalkLaw};

use super::{family_runs, replicas};
use crate::config::{ExperimentKind, ExperimentSpec, Family};
use crate::error::Result;
use crate::result::{CellRows, ExperimentResult};

struct TwoWalkReplica {
    pairs: usize,
    escaped: bool,
    cap: f64,
    close: f64,
}

struct Series {
    family: String,
    n: usize,
    seed: u64,
    control: bool,
    pairs: f64,
}

/// Exact `P(X[0,r] ∩ Y[1,r] = ∅)` for two lazy walks on `K_n` started at
/// the same vertex.
///
/// By symmetry only `k = |X[0,r]|` matters: the range grows from `k` to
/// `k+1` with probability `(n−k)/(2(n−1))` per step, and `Y` avoids a set of
/// size `k` containing its start with probability
/// `(n−k)/(2(n−1)) · (1 − k/(2(n−1)))^{r−1}`.
pub fn complete_graph_escape(n: usize, r: usize) -> f64 {
    assert!(n >= 2, "need two vertices");
    if r == 0 {
        return 1.0;
    }
    let m = (n - 1) as f64;
    let mut law = vec![0.0; n + 1];
    law[1] = 1.0;
    for _ in 0..r {
        let mut next = vec![0.0; n + 1];
        for k in 1..=n {
            let grow = 0.5 * (n - k) as f64 / m;
            next[k] += law[k] * (1.0 - grow);
            if k < n {
                next[k + 1] += law[k] * grow;
            }
        }
        law = next;
    }
    (1..=n)
        .map(|k| {
            let k_f = k as f64;
            law[k] * 0.5 * (n - k) as f64 / m * (1.0 - k_f / (2.0 * m)).powi(r as i32 - 1)
        })
        .sum()
}

fn hits_within<R: Rng + ?Sized>(
    g: &Network,
    pi: &StationarySampler,
    masks: &[&[bool]],
    r: usize,
    rng: &mut R,
) -> bool {
    let walk = sample_lazy_walk(g, pi.sample(rng), r - 1, rng);
    masks.iter().all(|m| walk.vertices().iter().any(|&v| m[v]))
}

fn one_replica(
    g: &Network,
    pi: &StationarySampler,
    r: usize,
    law: WalkLaw,
    seed: u64,
) -> Result<TwoWalkReplica> {
    let n = g.vertex_count();
    let mut rng = seeded(seed);

    // (a), (b): X[0,r] and Y[0,r] from one stationary start
    let u = pi.sample(&mut rng);
    let x = sample_lazy_walk(g, u, r, &mut rng);
    let y = sample_lazy_walk(g, u, r, &mut rng);
    let mut xs = x.vertices().to_vec();
    xs.sort_unstable();
    let count = |v: usize| xs.partition_point(|&a| a <= v) - xs.partition_point(|&a| a < v);
    let pairs = y.vertices().iter().map(|&v| count(v)).sum();
    let escaped = y.vertices()[1..].iter().all(|&v| count(v) == 0);

    // (c): cut points of a walk of length r−1; a walk of length 0 has none
    let walk = sample_lazy_walk(g, pi.sample(&mut rng), r - 1, &mut rng);
    let cp = cut_points(&walk);
    let cap = if cp.is_empty() {
        0.0
    } else {
        let set = VertexSet::new(g, cp)?;
        match law {
            WalkLaw::Exact => capacity_exact(g, &set, r)?,
            WalkLaw::MonteCarlo { .. } => {
                f64::from(u8::from(hits_within(g, pi, &[&set.mask(n)], r, &mut rng)))
            }
        }
    };

    // (d): closeness of the ranges of two independent walks
    let a = sample_lazy_walk(g, pi.sample(&mut rng), r - 1, &mut rng);
    let b = sample_lazy_walk(g, pi.sample(&mut rng), r - 1, &mut rng);
    let (a, b) = (
        VertexSet::new(g, a.into_vertices())?,
        VertexSet::new(g, b.into_vertices())?,
    );
    let close = match law {
        WalkLaw::Exact => closeness_exact(g, &a, &b, r)?,
        WalkLaw::MonteCarlo { .. } => f64::from(u8::from(hits_within(
            g,
            pi,
            &[&a.mask(n), &b.mask(n)],
            r,
            &mut rng,
        ))),
    };
    Ok(TwoWalkReplica {
        pairs,
        escaped,
        cap,
        close,
    })
}

/// The four two-walk estimates with `q = r/√n`: intersection pairs (summed
/// over vertices), the escape probability, `E[Cap_r(CP(X))]/q²` and
/// `E[Close_r(Y,Z)]/q⁴`.
pub fn run_two_walk_claims(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let kind = ExperimentKind::TwoWalkClaims;
    let reps = spec.replicas_for(kind);
    let p = &spec.params;
    let mut out = ExperimentResult::default();
    let mut series = Vec::new();
    for cell in spec.cells(kind)? {
        let g = &cell.graph;
        let n = cell.n();
        let scales = p.scales(n);
        let r = scales.r;
        let q2 = (r * r) as f64 / n as f64;
        let pi = StationarySampler::new(g);
        let law = p.walk_law(g, cell.seed);
        let results = replicas(&cell, reps, |_, seed| one_replica(g, &pi, r, law, seed))?;

        let mut rows = CellRows::new(&cell.family, n, cell.seed);
        rows.value("r", r as f64);
        rows.value("s", scales.s as f64);
        let mut pairs = Vec::with_capacity(reps);
        let mut caps = Vec::with_capacity(reps);
        let mut closes = Vec::with_capacity(reps);
        let mut escapes = 0;
        for (i, (seed, x)) in results.iter().enumerate() {
            rows.replica(i, *seed, "a_pairs", x.pairs as f64);
            rows.replica(i, *seed, "b_escaped", if x.escaped { 1.0 } else { 0.0 });
            rows.replica(i, *seed, "c_cap", x.cap);
            rows.replica(i, *seed, "d_close", x.close);
            pairs.push(x.pairs as f64);
            caps.push(x.cap / q2);
            closes.push(x.close / (q2 * q2));
            escapes += usize::from(x.escaped);
        }
        let a = Estimate::mean_of(&pairs);
        let b = Estimate::proportion(escapes, reps);
        rows.estimate("a_pairs_mean", a);
        rows.estimate("b_escape", b);
        rows.estimate("c_cap_scaled", Estimate::mean_of(&caps));
        rows.estimate("d_close_scaled", Estimate::mean_of(&closes));
        if cell.kind == Family::Complete {
            let exact = complete_graph_escape(n, r);
            rows.value("b_escape_exact", exact);
            let se = (exact * (1.0 - exact) / reps as f64)
                .sqrt()
                .max(1.0 / reps as f64);
            rows.check(
                "b_escape_matches_exact",
                (b.value - exact).abs() <= 4.0 * se,
            );
        }
        out.extend(rows.rows);
        series.push(Series {
            family: cell.family.clone(),
            n,
            seed: cell.seed,
            control: cell.control,
            pairs: a.value,
        });
    }
    for run in family_runs(&series, |s| &s.family) {
        for w in run.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let mut rows = CellRows::new(&hi.family, hi.n, hi.seed);
            rows.value("a_pairs_growth", hi.pairs / lo.pairs);
            if !hi.control {
                rows.check("a_pairs_not_doubling", hi.pairs < 2.0 * lo.pairs);
            }
            out.extend(rows.rows);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::GraphSpec;

    // Sums over every pair of lazy walk paths on K_n.
    fn brute_escape(n: usize, r: usize) -> f64 {
        fn paths(n: usize, r: usize) -> Vec<(Vec<usize>, f64)> {
            let mut out = vec![(vec![0], 1.0)];
            for _ in 0..r {
                let mut next = Vec::new();
                for (p, w) in &out {
                    let last = *p.last().unwrap();
                    for v in 0..n {
                        let step = if v == last { 0.5 } else { 0.5 / (n - 1) as f64 };
                        let mut q = p.clone();
                        q.push(v);
                        next.push((q, w * step));
                    }
                }
                out = next;
            }
            out
        }
        let all = paths(n, r);
        let mut total = 0.0;
        for (x, wx) in &all {
            for (y, wy) in &all {
                if y[1..].iter().all(|v| !x.contains(v)) {
                    total += wx * wy;
                }
            }
        }
        total
    }

    #[test]
    fn escape_formula_matches_enumeration() {
        for (n, r) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 3)] {
            let (a, b) = (complete_graph_escape(n, r), brute_escape(n, r));
            assert!((a - b).abs() < 1e-12, "n={n} r={r}: {a} vs {b}");
        }
        assert_eq!(complete_graph_escape(7, 0), 1.0);
    }

    #[test]
    fn run_time_one_has_no_cut_points() {
        // X[0,0] has no cut times, so Cap_1(CP(X)) = 0
        let mut spec = ExperimentSpec::new(vec![GraphSpec::new(Family::Complete, vec![8])], 1);
        spec.replicas = Some(20);
        spec.params.r = Some(1);
        let res = run_two_walk_claims(&spec).unwrap();
        assert!(res
            .rows
            .iter()
            .filter(|x| x.statistic == "c_cap")
            .all(|x| x.value == 0.0));
    }

    #[test]
    fn complete_graph_matches_oracle() {
        let mut spec = ExperimentSpec::new(vec![GraphSpec::new(Family::Complete, vec![16])], 8);
        spec.replicas = Some(4000);
        let res = run_two_walk_claims(&spec).unwrap();
        assert!(
            res.passed(),
            "{:?}",
            res.failed_checks().collect::<Vec<_>>()
        );
    }
}
