use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ustlab::{
    audit, run_with_threads, ExperimentKind, ExperimentResult, ExperimentSpec, HarnessError, Params,
};
use ustlab_core::graph::read_edge_list;

/// Uniform spanning tree experiments.
#[derive(Debug, Parser)]
#[command(name = "ustlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment spec in JSON.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed of the config.
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output path; falls back to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (all cores by default).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "snake_case")]
enum Command {
    DiameterScaling(RunArgs),
    PathLaw(RunArgs),
    SunnyCoupling(RunArgs),
    TwoWalkClaims(RunArgs),
    HeightAndBall(RunArgs),
    AssumptionAudit(RunArgs),
    /// Balance, mixing and escaping report for one edge-list graph.
    Audit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = Params::default().alpha)]
        alpha: f64,
        #[arg(long, default_value_t = Params::default().theta)]
        theta: f64,
        #[arg(long, default_value_t = Params::default().max_balance)]
        max_balance: f64,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

fn run_experiment(kind: ExperimentKind, args: RunArgs) -> Result<ExperimentResult, HarnessError> {
    let mut spec = ExperimentSpec::load(&args.config)?;
    if let Some(k) = spec.experiment {
        if k != kind {
            return Err(HarnessError::Config(format!(
                "config is for {k}, not {kind}"
            )));
        }
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let result = run_with_threads(kind, &spec, args.threads)?;
    match args.out.or(spec.output) {
        Some(path) => result.write_csv(BufWriter::new(File::create(path)?))?,
        None => result.write_csv(io::stdout().lock())?,
    }
    Ok(result)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (kind, args) = match cli.command {
        Command::DiameterScaling(a) => (ExperimentKind::DiameterScaling, a),
        Command::PathLaw(a) => (ExperimentKind::PathLaw, a),
        Command::SunnyCoupling(a) => (ExperimentKind::SunnyCoupling, a),
        Command::TwoWalkClaims(a) => (ExperimentKind::TwoWalkClaims, a),
        Command::HeightAndBall(a) => (ExperimentKind::HeightAndBall, a),
        Command::AssumptionAudit(a) => (ExperimentKind::AssumptionAudit, a),
        Command::Audit {
            graph,
            alpha,
            theta,
            max_balance,
        } => {
            let params = Params {
                alpha,
                theta,
                max_balance,
                ..Params::default()
            };
            let report = File::open(&graph)
                .map_err(HarnessError::from)
                .and_then(|f| Ok(read_edge_list(BufReader::new(f))?))
                .and_then(|g| audit(&g, &params));
            return match report {
                Ok(r) => {
                    println!("{r}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("ustlab: {e}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match run_experiment(kind, args) {
        Ok(result) => {
            let failed: Vec<_> = result.failed_checks().collect();
            let _ = io::stdout().flush();
            if failed.is_empty() {
                eprintln!("ustlab: {} rows, all checks passed", result.rows.len());
                ExitCode::SUCCESS
            } else {
                for row in &failed {
                    eprintln!(
                        "ustlab: FAILED {} ({}, n = {})",
                        row.statistic, row.family, row.n
                    );
                }
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Err(e) => {
            eprintln!("ustlab: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
