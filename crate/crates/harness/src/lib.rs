//! Experiment harness for the UST diameter law at desk scale.
//!
//! An [`ExperimentSpec`] (usually read from JSON) lists graph families,
//! sizes, replica counts, a seed and the experiment parameters. Each runner
//! returns an [`ExperimentResult`] whose rows go to CSV. Rows whose
//! statistic starts with `check:` record a property that must hold; the CLI
//! exits with status 2 when any of them fails.

pub mod audit;
pub mod config;
pub mod error;
pub mod experiments;
pub mod result;

pub use audit::{audit, run_assumption_audit, AuditReport, Verdict};
pub use config::{CapacityBackend, ExperimentKind, ExperimentSpec, Family, GraphSpec, Params};
pub use error::{HarnessError, Result};
pub use experiments::{
    run_diameter_scaling, run_height_and_ball, run_path_law, run_sunny_coupling,
    run_two_walk_claims,
};
pub use result::{ExperimentResult, Row};

/// Runs `kind` on `spec` with the current rayon pool.
pub fn run(kind: ExperimentKind, spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    match kind {
        ExperimentKind::DiameterScaling => run_diameter_scaling(spec),
        ExperimentKind::PathLaw => run_path_law(spec),
        ExperimentKind::SunnyCoupling => run_sunny_coupling(spec),
        ExperimentKind::TwoWalkClaims => run_two_walk_claims(spec),
        ExperimentKind::HeightAndBall => run_height_and_ball(spec),
        ExperimentKind::AssumptionAudit => run_assumption_audit(spec),
    }
}

/// [`run`] on a dedicated pool of `threads` workers (all cores when `None`).
pub fn run_with_threads(
    kind: ExperimentKind,
    spec: &ExperimentSpec,
    threads: Option<usize>,
) -> Result<ExperimentResult> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        builder = builder.num_threads(k);
    }
    builder.build()?.install(|| run(kind, spec))
}
