use ustlab_core::graph::make_sunny;
use ustlab_core::rng::{seeded, split_seed, stream_of};
use ustlab_core::ust::loop_erase;
use ustlab_core::walk::{capacity, walk_until, StationarySampler};
use ustlab_core::{Estimate, VertexSet, Walk};

use super::replicas;
use crate::config::{Cell, ExperimentKind, ExperimentSpec};
use crate::error::Result;
use crate::result::{CellRows, ExperimentResult};

struct SunnyReplica {
    tau: usize,
    le_size: usize,
    cap: f64,
    hit_sun: bool,
}

/// `P(τ_ρ ≤ t)` for a geometric time with success probability `p` per step.
pub fn geometric_cdf(p: f64, t: usize) -> f64 {
    1.0 - (1.0 - p).powi(t as i32)
}

/// Walks on the sunny network `Ĝ_β` for each `β` of the grid: the sun
/// hitting time of `X`, the size and capacity of `LE(X[0,τ_ρ))`, and whether
/// a second walk reaches `ρ` before `LE(X)`.
pub fn run_sunny_coupling(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let kind = ExperimentKind::SunnyCoupling;
    let reps = spec.replicas_for(kind);
    let p = &spec.params;
    let mut out = ExperimentResult::default();
    for cell in spec.cells(kind)? {
        let g = &cell.graph;
        let n = cell.n();
        let sqrt_n = (n as f64).sqrt();
        let r = p.scales(n).r;
        let limit = (n as f64).powf(0.25) / std::f64::consts::SQRT_2;
        let pi = StationarySampler::new(g);
        let mut rows = CellRows::new(&cell.family, n, cell.seed);
        let mut hit_by_beta = Vec::new();

        for &beta in &p.betas {
            if beta >= limit {
                rows.value(format!("beta_out_of_range[beta={beta}]"), beta);
                continue;
            }
            let tag = |name: &str| format!("{name}[beta={beta}]");
            let sunny = make_sunny(g, beta)?;
            let sun = n;
            let p_sun = beta * beta / sqrt_n;

            let step_error = (0..n)
                .map(|u| {
                    let w: f64 = sunny
                        .neighbors(u)
                        .iter()
                        .filter(|h| h.neighbor == sun)
                        .map(|h| h.weight)
                        .sum();
                    (0.5 * w / sunny.degree(u) - p_sun).abs()
                })
                .fold(0.0, f64::max);
            rows.value(tag("sun_step_max_error"), step_error);
            rows.check(&tag("sun_step_probability"), step_error <= 1e-12);

            let beta_cell = Cell {
                seed: split_seed(cell.seed, stream_of(&[&beta.to_bits().to_le_bytes()])),
                ..cell.clone()
            };
            let results = replicas(&beta_cell, reps, |_, seed| {
                let mut rng = seeded(seed);
                let x = walk_until(&sunny, pi.sample(&mut rng), true, |v| v == sun, &mut rng);
                let tau = x.len();
                let le = loop_erase(&Walk::new(x.vertices()[..tau].to_vec())?).path;
                let le_set = VertexSet::new(g, le.iter().copied())?;
                let cap = capacity(g, &le_set, r, p.walk_law(g, split_seed(seed, 1)))?.value;
                let mut stop = le_set.mask(n + 1);
                stop[sun] = true;
                let y = walk_until(&sunny, pi.sample(&mut rng), true, |v| stop[v], &mut rng);
                Ok(SunnyReplica {
                    tau,
                    le_size: le.len(),
                    cap,
                    hit_sun: y.end() == sun,
                })
            })?;

            let mut taus = Vec::with_capacity(reps);
            let mut sizes = Vec::with_capacity(reps);
            let mut caps = Vec::with_capacity(reps);
            let (mut early, mut hits) = (0, 0);
            let early_time = (beta * sqrt_n).floor() as usize;
            for (i, (seed, x)) in results.iter().enumerate() {
                rows.replica(i, *seed, tag("tau_rho"), x.tau as f64);
                rows.replica(i, *seed, tag("le_size"), x.le_size as f64);
                rows.replica(i, *seed, tag("cap_le"), x.cap);
                rows.replica(i, *seed, tag("hit_sun"), if x.hit_sun { 1.0 } else { 0.0 });
                taus.push(x.tau as f64);
                sizes.push(x.le_size as f64 * beta.powi(3) / sqrt_n);
                caps.push(x.cap * sqrt_n / (beta * r as f64));
                early += usize::from(x.tau <= early_time);
                hits += usize::from(x.hit_sun);
            }

            let tau_mean = Estimate::mean_of(&taus);
            rows.estimate(tag("tau_rho_mean"), tau_mean);
            rows.value(tag("tau_rho_expected"), 1.0 / p_sun);
            rows.check(
                &tag("tau_rho_mean_matches_geometric"),
                tau_mean.agrees_with(1.0 / p_sun, 4.0),
            );

            let early_hat = Estimate::proportion(early, reps);
            let bound = beta.powi(3);
            rows.estimate(tag("p_tau_rho_early"), early_hat);
            rows.value(
                tag("p_tau_rho_early_exact"),
                geometric_cdf(p_sun, early_time),
            );
            rows.value(tag("p_tau_rho_early_bound"), bound);
            let slack = 4.0 * (bound.min(1.0) * (1.0 - bound.min(1.0)) / reps as f64).sqrt();
            rows.check(
                &tag("p_tau_rho_early_within_bound"),
                early_hat.value <= bound + slack,
            );

            rows.estimate(tag("le_size_over_threshold"), Estimate::mean_of(&sizes));
            rows.estimate(tag("cap_le_scaled"), Estimate::mean_of(&caps));
            let hit = Estimate::proportion(hits, reps);
            rows.estimate(tag("p_hit_sun"), hit);
            hit_by_beta.push((beta, hit.value));
        }

        let first = hit_by_beta.iter().min_by(|a, b| a.0.total_cmp(&b.0));
        let last = hit_by_beta.iter().max_by(|a, b| a.0.total_cmp(&b.0));
        if let (Some(lo), Some(hi)) = (first, last) {
            if hi.0 > lo.0 {
                rows.check("sun_hits_increase_with_beta", hi.1 > lo.1);
            }
        }
        out.extend(rows.rows);
    }
    Ok(out)
}
