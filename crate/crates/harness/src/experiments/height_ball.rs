use ustlab_core::interlacement::ball_growth;
use ustlab_core::rng::{seeded, split_seed, stream_of};
use ustlab_core::ust::{wilson_with, Stepping};
use ustlab_core::walk::StationarySampler;
use ustlab_core::{Estimate, VertexSet};

use super::{replicas, stationary_path};
use crate::config::{ExperimentKind, ExperimentSpec};
use crate::error::Result;
use crate::result::{CellRows, ExperimentResult};

struct HeightReplica {
    w_size: usize,
    height: usize,
    path_len: usize,
    wired_diameter: usize,
    diameter: usize,
    spanning: bool,
    start: usize,
    path: Vec<usize>,
}

/// Tail of the height of `T_W` for `W` a UST path between stationary
/// endpoints, the ball-growth table around one path endpoint, and the
/// per-replica bound `diam(T) ≤ |φ| + diam(T_W wired)` for the tree `T`
/// obtained by hanging `T_W` on `φ`.
pub fn run_height_and_ball(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let kind = ExperimentKind::HeightAndBall;
    let reps = spec.replicas_for(kind);
    let p = &spec.params;
    let mut out = ExperimentResult::default();
    for cell in spec.cells(kind)? {
        let g = &cell.graph;
        let n = cell.n();
        let pi = StationarySampler::new(g);
        let results = replicas(&cell, reps, |_, seed| {
            let mut rng = seeded(seed);
            let sp = stationary_path(g, &pi, &mut rng)?;
            let w = VertexSet::new(g, sp.path.vertices.iter().copied())?;
            let forest = wilson_with(g, &w, None, Stepping::NonLazy, &mut rng)?;
            let tree = forest.attach_path(&sp.path.vertices, &sp.path.edges)?;
            Ok(HeightReplica {
                w_size: w.len(),
                height: forest.height(),
                path_len: sp.path.len(),
                wired_diameter: forest.wired_diameter(),
                diameter: tree.diameter()?,
                spanning: tree.is_spanning_tree_of(g),
                start: sp.u,
                path: sp.path.vertices,
            })
        })?;

        let mut rows = CellRows::new(&cell.family, n, cell.seed);
        let mut bad_diameter = 0;
        let mut not_spanning = 0;
        for (i, (seed, x)) in results.iter().enumerate() {
            rows.replica(i, *seed, "w_size", x.w_size as f64);
            rows.replica(i, *seed, "height", x.height as f64);
            rows.replica(i, *seed, "diameter", x.diameter as f64);
            rows.replica(
                i,
                *seed,
                "diameter_bound",
                (x.path_len + x.wired_diameter) as f64,
            );
            bad_diameter += usize::from(x.diameter > x.path_len + x.wired_diameter);
            not_spanning += usize::from(!x.spanning);
        }
        rows.check("diameter_at_most_path_plus_wired", bad_diameter == 0);
        rows.check("hung_tree_is_spanning", not_spanning == 0);

        let mut tail = Vec::new();
        for &ell in &p.ells {
            let hits: Vec<f64> = results
                .iter()
                .map(|(_, x)| {
                    if x.height >= ell {
                        1.0 / x.w_size as f64
                    } else {
                        0.0
                    }
                })
                .collect();
            let count = hits.iter().filter(|&&h| h > 0.0).count();
            let prob = Estimate::proportion(count, reps);
            let per_w = Estimate::mean_of(&hits);
            let scaled = Estimate {
                value: ell as f64 * per_w.value,
                stderr: ell as f64 * per_w.stderr,
                ..per_w
            };
            rows.estimate(format!("tail[ell={ell}]"), prob);
            rows.estimate(format!("tail_scaled[ell={ell}]"), scaled);
            if ell > n {
                rows.check(&format!("tail_zero_beyond_n[ell={ell}]"), count == 0);
            }
            tail.push((ell, prob.value, scaled.value));
        }
        let mut sorted = tail.clone();
        sorted.sort_by_key(|t| t.0);
        rows.check("tail_monotone", sorted.windows(2).all(|w| w[1].1 <= w[0].1));
        let at = |ell: usize| tail.iter().find(|t| t.0 == ell).map(|t| t.2);
        if let (Some(s8), Some(s32)) = (at(8), at(32)) {
            rows.value("tail_scaled_ratio_32_over_8", s32 / s8);
            rows.check(
                "tail_scaled_not_doubling_8_to_32",
                s32 == 0.0 || s32 < 2.0 * s8,
            );
        }

        if n <= p.bubble_cap {
            if let Some((_, first)) = results.first() {
                let w = VertexSet::new(g, first.path.iter().copied())?;
                let ball_seed = split_seed(cell.seed, stream_of(&[b"ball"]));
                let table = ball_growth(g, &w, first.start, &p.ells, p.ball_reps, ball_seed)?;
                let mut within = true;
                for b in &table {
                    rows.estimate(format!("ball_mean[ell={}]", b.ell), b.mean);
                    if let Some(bound) = b.bound {
                        rows.value(format!("ball_bound[ell={}]", b.ell), bound);
                        within &= b.mean.value <= bound;
                    }
                }
                rows.check("ball_within_bound", within);
            }
        }
        out.extend(rows.rows);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Family, GraphSpec};

    #[test]
    fn small_torus_checks_hold() {
        let mut spec = ExperimentSpec::new(
            vec![GraphSpec {
                dim: Some(3),
                ..GraphSpec::new(Family::Torus, vec![4])
            }],
            2,
        );
        spec.replicas = Some(100);
        spec.params.ells = vec![1, 8, 32, 100];
        spec.params.ball_reps = 20;
        let res = run_height_and_ball(&spec).unwrap();
        assert!(
            res.passed(),
            "{:?}",
            res.failed_checks().collect::<Vec<_>>()
        );
        assert_eq!(
            res.summary("torus3", 64, "tail[ell=100]").unwrap().value,
            0.0
        );
        assert_eq!(res.summary("torus3", 64, "tail[ell=1]").unwrap().value, 1.0);
        assert!(res.summary("torus3", 64, "ball_bound[ell=8]").is_some());
    }
}
