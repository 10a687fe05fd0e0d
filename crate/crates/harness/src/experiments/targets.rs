//! Counting targets by Euler integration, without and with additive noise.

use rand::Rng;
use tdalab_core::closed_forms::expected_euler_integral_identity;
use tdalab_core::complex::CubicalGrid;
use tdalab_core::euler::{count_targets, rasterize, Shape, TargetScene};
use tdalab_core::field::{FieldSampler, GridSpec, SamplerConfig, Topology};

use super::{expect_kind, lk_for, write_summary};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{HarnessError, Result};
use crate::seeds::{realizations, splitmix64};
use crate::summary::{MonteCarloSummary, SummaryRow};

fn random_shape<R: Rng + ?Sized>(rng: &mut R, h: f64) -> Shape {
    if rng.random_bool(0.5) {
        let w = rng.random_range(3.0 * h..0.25);
        let t = rng.random_range(3.0 * h..0.25);
        let x = rng.random_range(0.0..1.0 - w);
        let y = rng.random_range(0.0..1.0 - t);
        Shape::Rect { lo: vec![x, y], hi: vec![x + w, y + t] }
    } else {
        let r = rng.random_range(2.0 * h..0.15);
        let c = vec![rng.random_range(r..1.0 - r), rng.random_range(r..1.0 - r)];
        Shape::Disc { center: c, radius: r }
    }
}

/// A scene of `count` possibly overlapping rectangles and discs in the unit
/// square, each rasterizing to a contractible support (γ = 1). Shapes whose
/// rasterization is not contractible are redrawn.
pub fn random_scene<R: Rng + ?Sized>(rng: &mut R, size: usize, count: usize) -> Result<TargetScene<f64>> {
    let domain = GridSpec::new(vec![size, size], 1.0, Topology::Box)?;
    let h = domain.spacing(0);
    let mut supports = Vec::with_capacity(count);
    while supports.len() < count {
        let raster = rasterize(&domain, &random_shape(rng, h))?;
        if TargetScene::new(domain.clone(), vec![raster.clone()], 1).is_ok() {
            supports.push(raster);
        }
    }
    Ok(TargetScene::new(domain, supports, 1)?)
}

/// Relative tolerance for ∫(h+f) = ∫h + ∫f on one realization.
pub const ADDITIVITY_TOLERANCE: f64 = 1e-9;

pub fn run_target_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::Targets)?;
    if cfg.target_size < 8 {
        return Err(HarnessError::Config("target_size must be at least 8".into()));
    }
    let mut s = MonteCarloSummary::new(cfg.experiment);

    let exact = realizations(cfg.scenes, cfg.base_seed, |_, seed| {
        let mut rng = seed.rng();
        let k = rng.random_range(0..=cfg.max_targets);
        Ok(count_targets(&random_scene(&mut rng, cfg.target_size, k)?)? == k as i64)
    })?;
    let hits = exact.iter().filter(|&&e| e).count();
    s.push(SummaryRow::assertion(
        "noiseless_exact",
        "fraction",
        hits as f64 / cfg.scenes.max(1) as f64,
        cfg.scenes,
        hits == cfg.scenes,
    ));

    // Noisy: one fixed scene with at least one target, fresh noise per run.
    let mut rng = tdalab_core::field::RngSeed(cfg.base_seed ^ splitmix64(u64::MAX)).rng();
    let k = rng.random_range(1..=cfg.max_targets.max(1));
    let scene = random_scene(&mut rng, cfg.target_size, k)?;
    let truth = (scene.gamma() * count_targets(&scene)?) as f64;
    let spec = scene.domain().clone();
    let noise_cfg = ExperimentConfig {
        dim: 2,
        size: cfg.target_size,
        side: 1.0,
        topology: Topology::Box,
        ..cfg.clone()
    };
    let bias = expected_euler_integral_identity(&lk_for(&noise_cfg)?);
    let grid = CubicalGrid::new(&spec)?;
    let signs = grid.signs();
    let h: Vec<f64> = scene.cell_counts()?.into_iter().map(|x| x as f64).collect();
    let int_h: f64 = h.iter().zip(&signs).map(|(&x, &s)| x * s as f64).sum();
    let sampler = FieldSampler::new(&spec, &noise_cfg.model()?, &SamplerConfig::default())?;
    let per_run = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let f = sampler.sample(seed);
        let (_, hi) = grid.vertex_extrema(f.values());
        let y: f64 = h.iter().zip(&hi).zip(&signs).map(|((&a, &b), &s)| (a + b) * s as f64).sum();
        let int_f: f64 = hi.iter().zip(&signs).map(|(&b, &s)| b * s as f64).sum();
        let scale = 1.0f64.max(y.abs()).max(int_h.abs()).max(int_f.abs());
        Ok((y - bias, (y - int_h - int_f).abs() / scale))
    })?;
    let shat: Vec<f64> = per_run.iter().map(|p| p.0).collect();
    let worst = per_run.iter().map(|p| p.1).fold(0.0, f64::max);
    s.push(SummaryRow::assertion(
        "additivity_residual",
        "max_relative",
        worst,
        cfg.runs,
        worst <= ADDITIVITY_TOLERANCE,
    ));
    s.push(SummaryRow::from_samples("s_hat", format!("targets={k}"), &shat, Some(truth), cfg.z_max));
    write_summary(cfg, &s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn empty_scene_counts_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert_eq!(count_targets(&random_scene(&mut rng, 32, 0).unwrap()).unwrap(), 0);
    }

    #[test]
    fn generated_scenes_count_exactly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for k in 0..6 {
            assert_eq!(count_targets(&random_scene(&mut rng, 48, k).unwrap()).unwrap(), k as i64);
        }
    }
}
