//! Monte Carlo experiments over the `tdalab-core` primitives: configuration,
//! reproducible parallel realizations, summaries with z-scores, and CSV/SVG
//! outputs.

pub mod config;
mod error;
pub mod experiments;
mod plot;
pub mod seeds;
pub mod summary;

pub use config::{ExperimentConfig, ExperimentKind, TransformKind};
pub use error::{HarnessError, Result};
pub use experiments::{
    expected_values, run_annulus_experiment, run_barcode_ec_experiment, run_diagram_experiment,
    run_ec_curve_experiment, run_euler_integral_experiment, run_experiment, run_target_experiment,
    run_torus_coverage_experiment,
};
pub use summary::{MonteCarloSummary, SummaryRow};
