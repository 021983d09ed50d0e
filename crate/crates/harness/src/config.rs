//! Experiment specifications as read from JSON.
//!
//! Seeds: every `(experiment, family, size)` cell gets
//! `split_seed(seed, stream_of([experiment, family, size]))`, and replica `i`
//! of a cell gets `split_seed(cell, i)`. Rows carry the seed they were drawn
//! from, so any replica can be rerun alone.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ustlab_core::graph::{
    make_complete, make_cycle, make_expander_with_paths, make_hypercube, make_path,
    make_random_regular, make_star, make_torus, make_two_cliques,
};
use ustlab_core::rng::{split_seed, stream_of};
use ustlab_core::walk::SPARSE_CAP;
use ustlab_core::{Network, WalkLaw};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    DiameterScaling,
    PathLaw,
    SunnyCoupling,
    TwoWalkClaims,
    HeightAndBall,
    AssumptionAudit,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::DiameterScaling,
        ExperimentKind::PathLaw,
        ExperimentKind::SunnyCoupling,
        ExperimentKind::TwoWalkClaims,
        ExperimentKind::HeightAndBall,
        ExperimentKind::AssumptionAudit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::DiameterScaling => "diameter_scaling",
            ExperimentKind::PathLaw => "path_law",
            ExperimentKind::SunnyCoupling => "sunny_coupling",
            ExperimentKind::TwoWalkClaims => "two_walk_claims",
            ExperimentKind::HeightAndBall => "height_and_ball",
            ExperimentKind::AssumptionAudit => "assumption_audit",
        }
    }

    /// Replicas per cell when the config leaves them out.
    pub fn default_replicas(self) -> usize {
        match self {
            ExperimentKind::DiameterScaling | ExperimentKind::PathLaw => 200,
            ExperimentKind::SunnyCoupling => 1000,
            ExperimentKind::TwoWalkClaims | ExperimentKind::HeightAndBall => 2000,
            ExperimentKind::AssumptionAudit => 1,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Hypercube,
    Torus,
    RandomRegular,
    Complete,
    Path,
    Cycle,
    Star,
    TwoCliques,
    ExpanderWithPaths,
}

impl Family {
    /// Families that break one of the assumptions and are run as controls.
    pub fn is_control(self) -> bool {
        matches!(
            self,
            Family::Path
                | Family::Cycle
                | Family::Star
                | Family::TwoCliques
                | Family::ExpanderWithPaths
        )
    }
}

/// One graph family and its size list. `sizes` are dimensions `m` for
/// hypercubes, side lengths for tori and vertex counts otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    /// Torus dimension, 5 by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    /// Random-regular degree, 3 by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl GraphSpec {
    pub fn new(family: Family, sizes: Vec<usize>) -> Self {
        GraphSpec {
            family,
            sizes,
            dim: None,
            degree: None,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Torus => format!("torus{}", self.dim.unwrap_or(5)),
            Family::RandomRegular => format!("random_regular{}", self.degree.unwrap_or(3)),
            f => serde_json::to_value(f)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
        }
    }

    /// Builds the graph for `size`; `seed` drives the random families.
    pub fn build(&self, size: usize, seed: u64) -> Result<Network> {
        let size_u32 = || {
            u32::try_from(size).map_err(|_| HarnessError::config("hypercube dimension too large"))
        };
        let g = match self.family {
            Family::Hypercube => make_hypercube(size_u32()?)?,
            Family::Torus => make_torus(self.dim.unwrap_or(5), size)?,
            Family::RandomRegular => make_random_regular(size, self.degree.unwrap_or(3), seed)?,
            Family::Complete => make_complete(size)?,
            Family::Path => make_path(size)?,
            Family::Cycle => make_cycle(size)?,
            Family::Star => make_star(size)?,
            Family::TwoCliques => make_two_cliques(size)?,
            Family::ExpanderWithPaths => make_expander_with_paths(size, seed)?,
        };
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityBackend {
    Exact,
    MonteCarlo,
    /// Exact up to the sparse cap, Monte Carlo above it.
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub alpha: f64,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub betas: Vec<f64>,
    pub ells: Vec<usize>,
    pub backend: CapacityBackend,
    pub mc_samples: usize,
    /// Escaping threshold for `B(G)`.
    pub theta: f64,
    /// Balance threshold for `max d / min d`.
    pub max_balance: f64,
    /// Window for the median of `diam/√n`.
    pub window: (f64, f64),
    /// Largest relative change of that median between consecutive sizes.
    pub max_drift: f64,
    /// Replicas per cell on which both capacity backends are compared.
    pub crosscheck: usize,
    /// Forests per ball-growth table.
    pub ball_reps: usize,
    /// Largest `n` for which the ball bound's `B_W(G)` is computed.
    pub bubble_cap: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            alpha: 0.1,
            r: None,
            s: None,
            betas: vec![0.25, 0.5, 1.0],
            ells: vec![1, 2, 4, 8, 16, 32, 64],
            backend: CapacityBackend::Auto,
            mc_samples: 4000,
            theta: 16.0,
            max_balance: 4.0,
            window: (0.5, 8.0),
            max_drift: 0.25,
            crosscheck: 3,
            ball_reps: 200,
            bubble_cap: 1024,
        }
    }
}

/// Buffer time `s` and run time `r` for a graph on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scales {
    pub r: usize,
    pub s: usize,
}

impl Params {
    /// `s = n^{1/2−2α/3}` and `r = n^{1/2−α/3}`, rounded and at least 1,
    /// unless overridden.
    pub fn scales(&self, n: usize) -> Scales {
        let pow = |e: f64| ((n as f64).powf(e).round() as usize).max(1);
        Scales {
            r: self.r.unwrap_or_else(|| pow(0.5 - self.alpha / 3.0)),
            s: self.s.unwrap_or_else(|| pow(0.5 - 2.0 * self.alpha / 3.0)),
        }
    }

    pub fn walk_law(&self, g: &Network, seed: u64) -> WalkLaw {
        let mc = WalkLaw::MonteCarlo {
            samples: self.mc_samples,
            seed,
        };
        match self.backend {
            CapacityBackend::Exact => WalkLaw::Exact,
            CapacityBackend::MonteCarlo => mc,
            CapacityBackend::Auto if g.vertex_count() <= SPARSE_CAP => WalkLaw::Exact,
            CapacityBackend::Auto => mc,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(HarnessError::config(m));
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return bad("alpha must lie in (0, 1/2)");
        }
        if self.r == Some(0) || self.s == Some(0) {
            return bad("r and s must be at least 1");
        }
        if self.betas.is_empty() || self.betas.iter().any(|b| b.is_nan() || *b <= 0.0) {
            return bad("betas must be a nonempty list of positive numbers");
        }
        if self.ells.is_empty() {
            return bad("ells must be nonempty");
        }
        if self.mc_samples == 0 || self.ball_reps == 0 {
            return bad("mc_samples and ball_reps must be at least 1");
        }
        let (lo, hi) = self.window;
        if lo.is_nan()
            || hi.is_nan()
            || lo >= hi
            || self.max_drift.is_nan()
            || self.max_drift <= 0.0
        {
            return bad("window must be increasing and max_drift positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentKind>,
    pub graphs: Vec<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replicas: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub params: Params,
}

/// One `(family, size)` combination with its graph.
#[derive(Clone, Debug)]
pub struct Cell {
    pub family: String,
    pub kind: Family,
    pub control: bool,
    pub size: usize,
    pub seed: u64,
    pub graph: Network,
}

impl Cell {
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn replica_seed(&self, i: usize) -> u64 {
        split_seed(self.seed, i as u64)
    }
}

impl ExperimentSpec {
    pub fn new(graphs: Vec<GraphSpec>, seed: u64) -> Self {
        ExperimentSpec {
            experiment: None,
            graphs,
            replicas: None,
            seed,
            output: None,
            params: Params::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.graphs.is_empty() {
            return Err(HarnessError::config("no graphs given"));
        }
        for g in &self.graphs {
            if g.sizes.is_empty() || g.sizes.windows(2).any(|p| p[0] >= p[1]) {
                return Err(HarnessError::config(format!(
                    "sizes of {} must be nonempty and strictly increasing",
                    g.label()
                )));
            }
        }
        if self.replicas == Some(0) {
            return Err(HarnessError::config("replicas must be at least 1"));
        }
        self.params.validate()
    }

    pub fn replicas_for(&self, kind: ExperimentKind) -> usize {
        self.replicas.unwrap_or_else(|| kind.default_replicas())
    }

    /// Every cell of the config, in order.
    pub fn cells(&self, kind: ExperimentKind) -> Result<Vec<Cell>> {
        let mut out = Vec::new();
        for gs in &self.graphs {
            let family = gs.label();
            for &size in &gs.sizes {
                let stream = stream_of(&[
                    kind.name().as_bytes(),
                    family.as_bytes(),
                    size.to_string().as_bytes(),
                ]);
                let seed = split_seed(self.seed, stream);
                let graph = gs.build(size, seed)?;
                out.push(Cell {
                    family: family.clone(),
                    kind: gs.family,
                    control: gs.family.is_control(),
                    size,
                    seed,
                    graph,
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_follow_defaults() {
        let p = Params::default();
        let sc = p.scales(1024);
        assert_eq!(sc.r, (1024f64.powf(0.5 - 0.1 / 3.0)).round() as usize);
        assert_eq!(sc.r, 25);
        assert_eq!(sc.s, 20);
        assert_eq!(p.scales(1), Scales { r: 1, s: 1 });
        let q = Params {
            r: Some(7),
            ..Params::default()
        };
        assert_eq!(q.scales(1024).r, 7);
    }

    #[test]
    fn parses_minimal_json() {
        let spec = ExperimentSpec::from_json(
            r#"{"graphs":[{"family":"torus","dim":5,"sizes":[3,4]},{"family":"hypercube","sizes":[8]}],"seed":9,
                "params":{"betas":[0.5],"backend":"monte_carlo"}}"#,
        )
        .unwrap();
        assert_eq!(spec.params.betas, vec![0.5]);
        assert_eq!(spec.params.backend, CapacityBackend::MonteCarlo);
        assert_eq!(spec.params.alpha, 0.1);
        assert_eq!(spec.graphs[0].label(), "torus5");
        assert_eq!(spec.graphs[1].label(), "hypercube");
        let cells = spec.cells(ExperimentKind::PathLaw).unwrap();
        assert_eq!(
            cells.iter().map(Cell::n).collect::<Vec<_>>(),
            vec![243, 1024, 256]
        );
        assert_ne!(
            cells[0].seed,
            spec.cells(ExperimentKind::DiameterScaling).unwrap()[0].seed
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for text in [
            r#"{"graphs":[]}"#,
            r#"{"graphs":[{"family":"path","sizes":[8,4]}]}"#,
            r#"{"graphs":[{"family":"path","sizes":[8]}],"replicas":0}"#,
            r#"{"graphs":[{"family":"path","sizes":[8]}],"params":{"alpha":0.7}}"#,
            r#"{"graphs":[{"family":"path","sizes":[8]}],"colour":1}"#,
            r#"{"graphs":[{"family":"moebius","sizes":[8]}]}"#,
        ] {
            assert!(ExperimentSpec::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut spec = ExperimentSpec::new(vec![GraphSpec::new(Family::Star, vec![5, 9])], 3);
        spec.replicas = Some(4);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(ExperimentSpec::from_json(&text).unwrap(), spec);
    }
}
