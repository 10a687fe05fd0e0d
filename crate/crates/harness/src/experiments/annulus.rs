//! Homology recovery from random samples of a planar annulus.

use rand::Rng;
use tdalab_core::complex::{cech_filtration, rips_filtration, Metric, PointCloud, SimplexOptions};
use tdalab_core::persistence::export::barcode_svg;
use tdalab_core::persistence::{reduce, Barcode};

use super::{expect_kind, write_summary, write_text};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{HarnessError, Result};
use crate::seeds::realizations;
use crate::summary::{MonteCarloSummary, SummaryRow};

/// Factor by which the longest bar must exceed the runner-up.
pub const DOMINANCE: f64 = 3.0;

/// Uniform (area measure) sample of `n` points with inner radius `r`
/// and outer radius `big_r`.
pub fn sample_annulus<R: Rng + ?Sized>(rng: &mut R, n: usize, r: f64, big_r: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let rho = (r * r + rng.random::<f64>() * (big_r * big_r - r * r)).sqrt();
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            vec![rho * theta.cos(), rho * theta.sin()]
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusTrial {
    /// Longest and second-longest bar lengths per degree, essential bars cut
    /// at the truncation radius. A missing runner-up is 0.
    pub top_two: [(f64, f64); 2],
    pub success: bool,
    /// Only checked for the L∞ metric.
    pub cech_equals_rips: Option<bool>,
}

fn top_two(bc: &Barcode<f64>, k: usize, horizon: f64) -> Option<(f64, f64)> {
    let l = bc.clipped_lengths(k, horizon);
    l.first().map(|&a| (a, l.get(1).copied().unwrap_or(0.0)))
}

fn trial(cfg: &ExperimentConfig, points: Vec<Vec<f64>>) -> Result<AnnulusTrial> {
    let cloud = PointCloud::new(points, cfg.metric)?;
    let opts = SimplexOptions::new(2).with_max_radius(cfg.max_radius);
    let bc = reduce(&rips_filtration(&cloud, &opts)?)?;
    let cech_equals_rips = if cfg.metric == Metric::Linf {
        Some(reduce(&cech_filtration(&cloud, &opts)?)?.bars() == bc.bars())
    } else {
        None
    };
    let pairs = [top_two(&bc, 0, cfg.max_radius), top_two(&bc, 1, cfg.max_radius)];
    let success = pairs.iter().all(|p| matches!(p, Some((a, b)) if *a > DOMINANCE * b));
    Ok(AnnulusTrial { top_two: pairs.map(|p| p.unwrap_or((0.0, 0.0))), success, cech_equals_rips })
}

pub fn run_annulus_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::Annulus)?;
    if !(cfg.inner_radius >= 0.0 && cfg.outer_radius > cfg.inner_radius) {
        return Err(HarnessError::Config("annulus needs 0 <= inner_radius < outer_radius".into()));
    }
    if !(cfg.max_radius > 0.0) {
        return Err(HarnessError::Config("max_radius must be positive".into()));
    }
    let trials = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let pts = sample_annulus(&mut seed.rng(), cfg.points, cfg.inner_radius, cfg.outer_radius);
        trial(cfg, pts)
    })?;
    let n = trials.len();
    let ok: Vec<f64> = trials.iter().map(|t| if t.success { 1.0 } else { 0.0 }).collect();
    let rate = ok.iter().sum::<f64>() / n as f64;
    let mut s = MonteCarloSummary::new(cfg.experiment);
    s.push(SummaryRow::assertion(
        "success_rate",
        format!("n={};min={}", cfg.points, cfg.min_success_rate),
        rate,
        n,
        rate >= cfg.min_success_rate,
    ));
    for (k, name) in [(0, "H0"), (1, "H1")] {
        let ratio: Vec<f64> = trials
            .iter()
            .map(|t| {
                let (a, b) = t.top_two[k];
                if b > 0.0 { a / b } else { f64::INFINITY }
            })
            .filter(|r| r.is_finite())
            .collect();
        if !ratio.is_empty() {
            s.push(SummaryRow::info("dominance_ratio", name, &ratio));
        }
        let longest: Vec<f64> = trials.iter().map(|t| t.top_two[k].0).collect();
        s.push(SummaryRow::info("longest_bar", name, &longest));
    }
    if cfg.metric == Metric::Linf {
        let same = trials.iter().filter(|t| t.cech_equals_rips == Some(true)).count();
        s.push(SummaryRow::assertion("cech_equals_rips", "agreement", same as f64 / n as f64, n, same == n));
    }
    let pts = sample_annulus(
        &mut crate::seeds::realization_seed(cfg.base_seed, 0).rng(),
        cfg.points,
        cfg.inner_radius,
        cfg.outer_radius,
    );
    let cloud = PointCloud::new(pts, cfg.metric)?;
    let bc = reduce(&rips_filtration(&cloud, &SimplexOptions::new(2).with_max_radius(cfg.max_radius))?)?;
    write_text(cfg, "barcode.svg", &barcode_svg(&bc, cfg.max_radius))?;
    write_summary(cfg, &s)?;
    Ok(s)
}
