//! Euler characteristic of a union of random L∞ balls on the flat torus.

use rand::Rng;
use tdalab_core::closed_forms::torus_coverage_expectation;
use tdalab_core::complex::CubicalGrid;
use tdalab_core::field::GridSpec;

use super::{expect_kind, write_summary};
use crate::config::ExperimentConfig;
use crate::config::ExperimentKind;
use crate::error::{HarnessError, Result};
use crate::seeds::realizations;
use crate::summary::{MonteCarloSummary, SummaryRow};

pub(crate) fn coverage_param(cfg: &ExperimentConfig) -> String {
    format!("n={};d={};tau={}", cfg.balls, cfg.dim, cfg.tau)
}

/// Grid vertices within `radius` of some center in the wrapped L∞ distance.
/// Every axis of `spec` must be a torus axis of side `spec.side()`.
pub fn covered_vertices(spec: &GridSpec<f64>, centers: &[Vec<f64>], radius: f64) -> Vec<bool> {
    let dim = spec.dim();
    let strides = spec.strides();
    let mut inside = vec![false; spec.len()];
    for c in centers {
        // Covered index offsets per axis, wrapped.
        let ranges: Vec<Vec<usize>> = (0..dim)
            .map(|a| {
                let n = spec.sizes()[a] as i64;
                let h = spec.spacing(a);
                let lo = ((c[a] - radius) / h).ceil() as i64;
                let hi = ((c[a] + radius) / h).floor() as i64;
                if hi - lo + 1 >= n {
                    (0..n as usize).collect()
                } else {
                    (lo..=hi).map(|i| i.rem_euclid(n) as usize).collect()
                }
            })
            .collect();
        if ranges.iter().any(|r| r.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; dim];
        'outer: loop {
            let v: usize = (0..dim).map(|a| ranges[a][idx[a]] * strides[a]).sum();
            inside[v] = true;
            for a in 0..dim {
                idx[a] += 1;
                if idx[a] < ranges[a].len() {
                    continue 'outer;
                }
                idx[a] = 0;
            }
            break;
        }
    }
    inside
}

pub fn run_torus_coverage_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::TorusCoverage)?;
    let spec = cfg.grid()?;
    if !spec.is_torus() {
        return Err(HarnessError::Config("torus coverage needs topology = \"torus\"".into()));
    }
    if cfg.balls == 0 {
        return Err(HarnessError::Config("balls must be at least 1".into()));
    }
    let closed = torus_coverage_expectation(cfg.balls, cfg.dim, cfg.tau)?;
    // τ is the volume fraction of one ball: (2ε)^d = τ·side^d.
    let eps = cfg.side * cfg.tau.powf(1.0 / cfg.dim as f64) / 2.0;
    // Padding by half a cell makes the mean side of a rasterized ball 2ε.
    let radius = eps + spec.spacing(0) / 2.0;
    let grid = CubicalGrid::new(&spec)?;
    let chis = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let mut rng = seed.rng();
        let centers: Vec<Vec<f64>> = (0..cfg.balls)
            .map(|_| (0..cfg.dim).map(|_| rng.random::<f64>() * cfg.side).collect())
            .collect();
        Ok(grid.euler_char_of_vertex_set(&covered_vertices(&spec, &centers, radius)) as f64)
    })?;
    let mut s = MonteCarloSummary::new(cfg.experiment);
    s.push(SummaryRow::from_samples("chi", coverage_param(cfg), &chis, Some(closed), cfg.z_max));
    write_summary(cfg, &s)?;
    Ok(s)
}
