use ustlab_core::stats::{iqr, median};
use ustlab_core::ust::wilson_fast;
use ustlab_core::VertexSet;

use super::{family_runs, replicas};
use crate::config::{ExperimentKind, ExperimentSpec, Family};
use crate::error::Result;
use crate::result::{CellRows, ExperimentResult};

struct Summary {
    family: String,
    n: usize,
    seed: u64,
    control: bool,
    median: f64,
}

/// Median and IQR of `diam(UST)/√n` per cell, the window and drift checks
/// for the regular families, and the divergence label for path-like controls.
pub fn run_diameter_scaling(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    let kind = ExperimentKind::DiameterScaling;
    let reps = spec.replicas_for(kind);
    let p = &spec.params;
    let (lo, hi) = p.window;
    let mut out = ExperimentResult::default();
    let mut series = Vec::new();

    for cell in spec.cells(kind)? {
        let g = &cell.graph;
        let n = cell.n();
        let sqrt_n = (n as f64).sqrt();
        let root = VertexSet::singleton(g, 0)?;
        let diams = replicas(&cell, reps, |_, seed| {
            Ok(wilson_fast(g, &root, seed)?.diameter()?)
        })?;

        let mut rows = CellRows::new(&cell.family, n, cell.seed);
        let mut ratios = Vec::with_capacity(reps);
        for (i, &(seed, d)) in diams.iter().enumerate() {
            let ratio = d as f64 / sqrt_n;
            rows.replica(i, seed, "diameter", d as f64);
            rows.replica(i, seed, "diam_over_sqrt_n", ratio);
            ratios.push(ratio);
        }
        let med = median(&ratios);
        rows.value("median_diam_over_sqrt_n", med);
        rows.value("iqr_diam_over_sqrt_n", iqr(&ratios));
        match cell.kind {
            Family::Path | Family::Cycle => {
                let exact = (n as f64 - 1.0) / sqrt_n;
                rows.check("control_ratio_exact", ratios.iter().all(|&r| r == exact));
            }
            Family::Star if n >= 3 => {
                rows.check("star_diameter_two", diams.iter().all(|x| x.1 == 2))
            }
            _ => {}
        }
        if !cell.control {
            rows.check("median_in_window", (lo..=hi).contains(&med));
        }
        out.extend(rows.rows);
        series.push(Summary {
            family: cell.family.clone(),
            n,
            seed: cell.seed,
            control: cell.control,
            median: med,
        });
    }

    for run in family_runs(&series, |s| &s.family) {
        for w in run.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let mut rows = CellRows::new(&b.family, b.n, b.seed);
            let drift = (b.median / a.median - 1.0).abs();
            rows.value("drift_from_previous", drift);
            if !b.control {
                rows.check("drift_below_max", drift < p.max_drift);
            }
            out.extend(rows.rows);
        }
        // controls get a divergence label from the growth exponent of the median
        let (first, last) = (&run[0], &run[run.len() - 1]);
        if first.control {
            let mut rows = CellRows::new(&last.family, last.n, last.seed);
            let diverges = if run.len() > 1 {
                let exponent =
                    (last.median / first.median).ln() / (last.n as f64 / first.n as f64).ln();
                rows.value("growth_exponent", exponent);
                exponent >= 0.25
            } else {
                last.median > hi
            };
            rows.value("diverges", if diverges { 1.0 } else { 0.0 });
            out.extend(rows.rows);
        }
    }
    Ok(out)
}
