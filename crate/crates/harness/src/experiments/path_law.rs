use ustlab_core::rng::{seeded, split_seed};
use ustlab_core::walk::{capacity, capacity_exact, capacity_monte_carlo, StationarySampler};
use ustlab_core::{Estimate, VertexSet};

use super::{quantile_rows, replicas, stationary_path};
use crate::config::{ExperimentKind, ExperimentSpec};
use crate::error::Result;
use crate::result::{CellRows, ExperimentResult};

/// Largest `n` on which the two capacity backends are compared.
pub const CROSSCHECK_MAX_N: usize = 4096;

struct PathReplica {
    collisions: usize,
    edges: usize,
    vertices: usize,
    distance: usize,
    pi_mass: f64,
    cap: Estimate,
    crosscheck: Option<(f64, Estimate)>,
}

/// `|φ|/√n` and `Cap_r(φ)·√n/r` for the UST path between stationary
/// endpoints, with the quantiles that estimate `A` (95%) and `χ` (5%).
pub fn run_path_law(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let kind = ExperimentKind::PathLaw;
    let reps = spec.replicas_for(kind);
    let p = &spec.params;
    let mut out = ExperimentResult::default();
    for cell in spec.cells(kind)? {
        let g = &cell.graph;
        let n = cell.n();
        let sqrt_n = (n as f64).sqrt();
        let r = p.scales(n).r;
        let pi = StationarySampler::new(g);
        let balance = g.balance();

        let results = replicas(&cell, reps, |i, seed| {
            let mut rng = seeded(seed);
            let sp = stationary_path(g, &pi, &mut rng)?;
            let set = VertexSet::new(g, sp.path.vertices.iter().copied())?;
            let cap = capacity(g, &set, r, p.walk_law(g, split_seed(seed, 1)))?;
            let crosscheck = if i < p.crosscheck && n <= CROSSCHECK_MAX_N {
                let exact = capacity_exact(g, &set, r)?;
                let mc = capacity_monte_carlo(g, &set, r, p.mc_samples, split_seed(seed, 2))?;
                Some((exact, mc))
            } else {
                None
            };
            Ok(PathReplica {
                collisions: sp.collisions,
                edges: sp.path.len(),
                vertices: set.len(),
                distance: g.distance(sp.u, sp.v),
                pi_mass: set.stationary_mass(g),
                cap,
                crosscheck,
            })
        })?;

        let mut rows = CellRows::new(&cell.family, n, cell.seed);
        rows.value("r", r as f64);
        let (mut len_ratio, mut cap_ratio) = (Vec::new(), Vec::new());
        let (mut short, mut over_cap, mut over_mass, mut disagree) = (0, 0, 0, 0);
        let mut collisions = 0;
        for (i, (seed, x)) in results.iter().enumerate() {
            let seed = *seed;
            collisions += x.collisions;
            len_ratio.push(x.edges as f64 / sqrt_n);
            cap_ratio.push(x.cap.value * sqrt_n / r as f64);
            rows.replica(i, seed, "collisions", x.collisions as f64);
            rows.replica(i, seed, "path_len", x.edges as f64);
            rows.replica(i, seed, "path_len_over_sqrt_n", x.edges as f64 / sqrt_n);
            rows.replica_estimate(i, seed, "cap", x.cap);
            rows.replica(i, seed, "cap_scaled", x.cap.value * sqrt_n / r as f64);

            short += usize::from(x.edges < x.distance);
            // Cap_r(φ) ≤ r·π(φ) ≤ D·r·|φ|/n with |φ| counted in vertices
            let r_pi = r as f64 * x.pi_mass;
            over_cap += usize::from(x.cap.value > r_pi + 4.0 * x.cap.stderr + 1e-12);
            over_mass +=
                usize::from(r_pi > balance * r as f64 * x.vertices as f64 / n as f64 + 1e-12);
            if let Some((exact, mc)) = x.crosscheck {
                rows.replica(i, seed, "cap_exact", exact);
                rows.replica_estimate(i, seed, "cap_monte_carlo", mc);
                // standard error under the exact value, so a degenerate sample cannot pass trivially
                let se = (exact * (1.0 - exact) / mc.samples as f64)
                    .sqrt()
                    .max(1.0 / mc.samples as f64);
                disagree += usize::from((mc.value - exact).abs() > 4.0 * se);
            }
        }
        rows.value("collisions_total", collisions as f64);
        quantile_rows(&mut rows, "path_len_over_sqrt_n", &len_ratio);
        quantile_rows(&mut rows, "cap_scaled", &cap_ratio);
        rows.value("A_95", ustlab_core::stats::quantile(&len_ratio, 0.95));
        rows.value("chi_05", ustlab_core::stats::quantile(&cap_ratio, 0.05));
        rows.value("violations_path_shorter_than_distance", short as f64);
        rows.value("violations_cap_above_r_pi", over_cap as f64);
        rows.value("violations_r_pi_above_balance_bound", over_mass as f64);
        rows.check("path_not_shorter_than_distance", short == 0);
        rows.check("cap_at_most_r_pi", over_cap == 0);
        rows.check("r_pi_at_most_balance_bound", over_mass == 0);
        if results.iter().any(|x| x.1.crosscheck.is_some()) {
            rows.value("backend_disagreements", disagree as f64);
            rows.check("backends_agree", disagree == 0);
        }
        out.extend(rows.rows);
    }
    Ok(out)
}
