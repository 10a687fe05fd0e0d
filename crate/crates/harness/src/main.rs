use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use tdalab::{expected_values, run_experiment, ExperimentConfig, ExperimentKind};

/// Monte Carlo experiments for persistent homology and Euler calculus of
/// random fields.
#[derive(Parser)]
#[command(name = "tdalab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean Euler characteristic of superlevel sets against the kinematic formula.
    EcCurve(RunArgs),
    /// Mean Euler integral of G(f) against its closed form.
    EulerIntegral(RunArgs),
    /// Barcode Euler characteristic and its integral identity.
    BarcodeEc(RunArgs),
    /// Pooled persistence diagrams and the local-extrema correspondence.
    Diagrams(RunArgs),
    /// Euler characteristic of random L-infinity balls on the torus.
    TorusCoverage(RunArgs),
    /// Betti number recovery from noisy annulus samples.
    Annulus(RunArgs),
    /// Target counting by Euler integration.
    Targets(RunArgs),
    /// Print the closed-form values an experiment compares against.
    Expected {
        #[arg(value_enum)]
        experiment: ExperimentKind,
        #[command(flatten)]
        args: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML file; keys not given take the experiment's defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Small run counts for a quick check.
    #[arg(long)]
    smoke: bool,
}

impl RunArgs {
    fn resolve(&self, kind: ExperimentKind) -> anyhow::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                ExperimentConfig::load(&text, Some(kind))?
            }
            None => ExperimentConfig::for_experiment(kind),
        };
        if self.smoke {
            cfg = cfg.smoke();
        }
        if let Some(r) = self.runs {
            cfg.runs = r;
        }
        if let Some(s) = self.seed {
            cfg.base_seed = s;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::EcCurve(a) => (ExperimentKind::EcCurve, a),
        Command::EulerIntegral(a) => (ExperimentKind::EulerIntegral, a),
        Command::BarcodeEc(a) => (ExperimentKind::BarcodeEc, a),
        Command::Diagrams(a) => (ExperimentKind::Diagrams, a),
        Command::TorusCoverage(a) => (ExperimentKind::TorusCoverage, a),
        Command::Annulus(a) => (ExperimentKind::Annulus, a),
        Command::Targets(a) => (ExperimentKind::Targets, a),
        Command::Expected { experiment, args } => {
            let cfg = args.resolve(*experiment)?;
            println!("quantity,param,value");
            for (q, p, v) in expected_values(&cfg)? {
                println!("{q},{p},{v}");
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    let cfg = args.resolve(kind)?;
    let summary = run_experiment(&cfg)?;
    summary.write_csv(std::io::stdout().lock())?;
    let failed: Vec<String> = summary.failures().map(|r| format!("{} {}", r.quantity, r.param)).collect();
    if failed.is_empty() {
        eprintln!("{}: all checks passed; outputs in {}", kind.name(), cfg.output_dir.display());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}: failed: {}", kind.name(), failed.join(", "));
        Ok(ExitCode::FAILURE)
    }
}
