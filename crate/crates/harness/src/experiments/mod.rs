//! One runner per experiment kind. Each returns a [`MonteCarloSummary`] and
//! writes its files into `cfg.output_dir`.

mod annulus;
mod coverage;
mod fields;
mod targets;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use tdalab_core::closed_forms::{
    expected_barcode_ec, expected_ec_excursion, expected_euler_integral, lk_box, lk_torus,
    torus_coverage_expectation, LKVector, QuadratureSpec, TransformSpec,
};
use tdalab_core::complex::CubicalGrid;
use tdalab_core::field::{second_spectral_moment, Topology};

use crate::config::{ExperimentConfig, ExperimentKind, TransformKind};
use crate::error::{HarnessError, Result};
use crate::summary::MonteCarloSummary;

pub use annulus::{run_annulus_experiment, sample_annulus, AnnulusTrial};
pub use coverage::{covered_vertices, run_torus_coverage_experiment};
pub use fields::{
    run_barcode_ec_experiment, run_diagram_experiment, run_ec_curve_experiment, run_euler_integral_experiment,
};
pub use targets::{random_scene, run_target_experiment};

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::EcCurve => run_ec_curve_experiment(cfg),
        ExperimentKind::EulerIntegral => run_euler_integral_experiment(cfg),
        ExperimentKind::BarcodeEc => run_barcode_ec_experiment(cfg),
        ExperimentKind::Diagrams => run_diagram_experiment(cfg),
        ExperimentKind::TorusCoverage => run_torus_coverage_experiment(cfg),
        ExperimentKind::Annulus => run_annulus_experiment(cfg),
        ExperimentKind::Targets => run_target_experiment(cfg),
    }
}

pub(crate) fn expect_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.experiment != kind {
        return Err(HarnessError::Config(format!(
            "runner for `{}` called with experiment `{}`",
            kind.name(),
            cfg.experiment.name()
        )));
    }
    Ok(())
}

pub(crate) fn lk_for(cfg: &ExperimentConfig) -> Result<LKVector<f64>> {
    let lambda2 = second_spectral_moment(&cfg.model()?);
    Ok(match cfg.topology {
        Topology::Box => lk_box(cfg.dim, cfg.side, lambda2)?,
        Topology::Torus => lk_torus(cfg.dim, cfg.side, lambda2)?,
    })
}

pub(crate) fn transform_spec(kind: TransformKind) -> TransformSpec {
    match kind {
        TransformKind::Identity => TransformSpec::identity(),
        TransformKind::Negation => TransformSpec::negation(),
        TransformKind::Cube => TransformSpec::cube(),
    }
}

pub(crate) fn output_file(cfg: &ExperimentConfig, name: &str) -> Result<BufWriter<File>> {
    fs::create_dir_all(&cfg.output_dir)?;
    Ok(BufWriter::new(File::create(cfg.output_dir.join(name))?))
}

pub(crate) fn write_text(cfg: &ExperimentConfig, name: &str, text: &str) -> Result<PathBuf> {
    fs::create_dir_all(&cfg.output_dir)?;
    let path = cfg.output_dir.join(name);
    fs::write(&path, text)?;
    Ok(path)
}

pub(crate) fn write_summary(cfg: &ExperimentConfig, s: &MonteCarloSummary) -> Result<()> {
    s.write_csv(output_file(cfg, "summary.csv")?)
}

pub(crate) fn chi_of_domain(cfg: &ExperimentConfig) -> Result<i64> {
    Ok(CubicalGrid::new(&cfg.grid()?)?.euler_char())
}

pub(crate) fn param(x: f64) -> String {
    format!("{x}")
}

/// Closed-form values the experiment compares against, as
/// `(quantity, param, value)`.
pub fn expected_values(cfg: &ExperimentConfig) -> Result<Vec<(String, String, f64)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    match cfg.experiment {
        ExperimentKind::EcCurve => {
            let lk = lk_for(cfg)?;
            let vol = cfg.side.powi(cfg.dim as i32);
            for &u in &cfg.levels {
                out.push(("ec".into(), param(u), expected_ec_excursion(u, &lk)));
            }
            for &u in &cfg.levels {
                out.push(("volume".into(), param(u), vol * tdalab_core::closed_forms::normal_sf(u)));
            }
        }
        ExperimentKind::EulerIntegral | ExperimentKind::Targets => {
            let lk = lk_for(cfg)?;
            let ts = transform_spec(cfg.transform);
            out.push((
                "euler_integral".into(),
                format!("{:?}", cfg.transform).to_lowercase(),
                expected_euler_integral(&ts, &lk, &QuadratureSpec::default())?,
            ));
        }
        ExperimentKind::BarcodeEc => {
            let lk = lk_for(cfg)?;
            let chi_m = chi_of_domain(cfg)?;
            for &a in &cfg.levels {
                out.push(("barcode_ec".into(), param(a), expected_barcode_ec(a, &lk, chi_m)));
            }
        }
        ExperimentKind::TorusCoverage => {
            out.push((
                "chi".into(),
                coverage::coverage_param(cfg),
                torus_coverage_expectation(cfg.balls, cfg.dim, cfg.tau)?,
            ));
        }
        ExperimentKind::Diagrams | ExperimentKind::Annulus => {}
    }
    Ok(out)
}
