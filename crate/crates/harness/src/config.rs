//! Flat key-value experiment configuration (TOML syntax).

use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use tdalab_core::complex::Metric;
use tdalab_core::field::{CovarianceModel, GridSpec, RngSeed, Topology};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    EcCurve,
    EulerIntegral,
    BarcodeEc,
    Diagrams,
    TorusCoverage,
    Annulus,
    Targets,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::EcCurve => "ec-curve",
            ExperimentKind::EulerIntegral => "euler-integral",
            ExperimentKind::BarcodeEc => "barcode-ec",
            ExperimentKind::Diagrams => "diagrams",
            ExperimentKind::TorusCoverage => "torus-coverage",
            ExperimentKind::Annulus => "annulus",
            ExperimentKind::Targets => "targets",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Identity,
    Negation,
    Cube,
}

impl FromStr for TransformKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(TransformKind::Identity),
            "negation" => Ok(TransformKind::Negation),
            "cube" => Ok(TransformKind::Cube),
            other => Err(HarnessError::Config(format!("unknown transform `{other}`"))),
        }
    }
}

/// Every field has a default, so a config file only lists what differs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub dim: usize,
    pub size: usize,
    pub side: f64,
    pub topology: Topology,
    pub alpha: f64,
    pub runs: usize,
    pub base_seed: u64,
    pub levels: Vec<f64>,
    pub output_dir: PathBuf,
    /// Acceptance threshold on |z|.
    pub z_max: f64,

    // euler-integral
    pub transform: TransformKind,

    // diagrams
    pub bin_width: f64,

    // torus-coverage
    pub balls: usize,
    pub tau: f64,

    // annulus
    pub points: usize,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub max_radius: f64,
    pub metric: Metric,
    pub min_success_rate: f64,

    // targets
    pub scenes: usize,
    pub max_targets: usize,
    pub target_size: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentKind::EcCurve,
            dim: 2,
            size: 64,
            side: 1.0,
            topology: Topology::Box,
            alpha: 100.0,
            runs: 2000,
            base_seed: 20_240_601,
            levels: (0..=12).map(|k| -3.0 + 0.5 * k as f64).collect(),
            output_dir: PathBuf::from("out"),
            z_max: 3.0,
            transform: TransformKind::Identity,
            bin_width: 0.1,
            balls: 5,
            tau: 0.3,
            points: 500,
            inner_radius: 0.5,
            outer_radius: 1.0,
            max_radius: 0.28,
            metric: Metric::L2,
            min_success_rate: 0.95,
            scenes: 100,
            max_targets: 10,
            target_size: 64,
        }
    }
}

impl ExperimentConfig {
    /// Defaults adjusted to the experiment's usual scale.
    pub fn for_experiment(kind: ExperimentKind) -> Self {
        let mut c = ExperimentConfig { experiment: kind, ..Default::default() };
        match kind {
            ExperimentKind::BarcodeEc => c.levels = vec![-4.0, -1.0, 0.0, 1.0],
            ExperimentKind::TorusCoverage => {
                c.topology = Topology::Torus;
                c.size = 512;
            }
            ExperimentKind::Annulus => c.runs = 100,
            _ => {}
        }
        c
    }

    /// Parses a config file. Keys not given take the defaults of the file's
    /// `experiment` (or of `kind` when the file does not name one).
    pub fn load(text: &str, kind: Option<ExperimentKind>) -> Result<Self> {
        let err = |e: &dyn std::fmt::Display| HarnessError::Config(e.to_string());
        let file: toml::Table = text.parse().map_err(|e| err(&e))?;
        let named = match file.get("experiment") {
            Some(v) => Some(ExperimentKind::deserialize(v.clone()).map_err(|e| err(&e))?),
            None => None,
        };
        if let (Some(a), Some(b)) = (named, kind) {
            if a != b {
                return Err(HarnessError::Config(format!(
                    "config is for `{}` but `{}` was requested",
                    a.name(),
                    b.name()
                )));
            }
        }
        let base = Self::for_experiment(named.or(kind).unwrap_or(ExperimentKind::EcCurve));
        let mut table = toml::Table::try_from(&base).map_err(|e| err(&e))?;
        table.extend(file);
        let c: ExperimentConfig = table.try_into().map_err(|e| err(&e))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Self::load(text, None)
    }

    /// A small-scale variant for quick checks.
    pub fn smoke(mut self) -> Self {
        self.runs = self.runs.min(match self.experiment {
            ExperimentKind::Annulus => 5,
            _ => 100,
        });
        self.scenes = self.scenes.min(20);
        if self.experiment == ExperimentKind::TorusCoverage {
            self.size = self.size.min(128);
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.levels.windows(2).any(|w| w[0] > w[1]) {
            return bad("levels must be sorted".into());
        }
        if !(self.alpha > 0.0) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.z_max > 0.0) {
            return bad("z_max must be positive".into());
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<GridSpec<f64>> {
        Ok(GridSpec::new(vec![self.size; self.dim], self.side, self.topology)?)
    }

    pub fn model(&self) -> Result<CovarianceModel<f64>> {
        Ok(CovarianceModel::squared_exponential(self.alpha)?)
    }

    pub fn seed(&self) -> RngSeed {
        RngSeed(self.base_seed)
    }
}
