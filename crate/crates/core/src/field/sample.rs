//! Exact Gaussian sampling on regular grids.
//!
//! Three engines share one entry point:
//! - dense Cholesky of the full covariance (small grids, any topology),
//! - separable Cholesky, one factor per axis, for box grids under a
//!   product-form covariance (the covariance is a Kronecker product),
//! - circulant embedding via FFT for torus grids of any size.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::covariance::{covariance_matrix, CovarianceModel, DENSE_CAP};
use super::grid::{GridField, GridSpec, Topology};
use super::linalg::{LowerTriangular, SymMatrix};
use crate::error::{Error, Result};
use crate::Scalar;

/// Seed of one field realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMethod {
    DenseCholesky,
    SeparableCholesky,
    CirculantEmbedding,
}

#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub dense_cap: usize,
    /// Forces a method when it is applicable; `None` picks automatically.
    pub prefer: Option<SamplingMethod>,
    /// Relative size of negative circulant eigenvalues that is clipped to zero
    /// instead of triggering the dense fallback.
    pub eigen_tolerance: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { dense_cap: DENSE_CAP, prefer: None, eigen_tolerance: 1e-8 }
    }
}

/// What the sampler did while preparing its factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingReport {
    pub method: SamplingMethod,
    /// Largest diagonal jitter applied to any Cholesky factor.
    pub jitter: f64,
    pub warnings: Vec<String>,
}

enum Engine<S: Scalar> {
    Dense(LowerTriangular<S>),
    Separable(Vec<LowerTriangular<S>>),
    Circulant { sqrt_eig: Vec<S>, plans: Vec<Arc<dyn Fft<S>>> },
}

/// Precomputed factorization for repeated exact sampling of one (grid, model) pair.
pub struct FieldSampler<S: Scalar> {
    spec: GridSpec<S>,
    engine: Engine<S>,
    report: SamplingReport,
}

impl<S: Scalar> FieldSampler<S> {
    pub fn new(spec: &GridSpec<S>, model: &CovarianceModel<S>, cfg: &SamplerConfig) -> Result<Self> {
        let n = spec.len();
        let method = match cfg.prefer {
            Some(SamplingMethod::DenseCholesky) => SamplingMethod::DenseCholesky,
            Some(SamplingMethod::CirculantEmbedding) if spec.is_torus() => SamplingMethod::CirculantEmbedding,
            Some(SamplingMethod::SeparableCholesky) if model.is_separable() => SamplingMethod::SeparableCholesky,
            _ => match spec.topology() {
                Topology::Torus => SamplingMethod::CirculantEmbedding,
                Topology::Box if model.is_separable() => SamplingMethod::SeparableCholesky,
                Topology::Box => SamplingMethod::DenseCholesky,
            },
        };
        match method {
            SamplingMethod::DenseCholesky => Self::dense(spec, model, cfg.dense_cap, Vec::new()),
            SamplingMethod::SeparableCholesky => {
                let mut factors = Vec::with_capacity(spec.dim());
                let mut jitter = S::zero();
                for a in 0..spec.dim() {
                    let m = SymMatrix::from_fn(spec.sizes()[a], |i, j| model.axis_factor(spec.lag(a, i, j)));
                    let (l, j) = m.cholesky()?;
                    jitter = jitter.max(j);
                    factors.push(l);
                }
                Ok(FieldSampler {
                    spec: spec.clone(),
                    engine: Engine::Separable(factors),
                    report: SamplingReport {
                        method,
                        jitter: jitter.as_f64(),
                        warnings: Vec::new(),
                    },
                })
            }
            SamplingMethod::CirculantEmbedding => {
                let mut planner = FftPlanner::<S>::new();
                let plans: Vec<_> = spec.sizes().iter().map(|&m| planner.plan_fft_forward(m)).collect();
                // first row of the block-circulant covariance
                let mut buf: Vec<Complex<S>> = (0..n)
                    .map(|p| Complex::new(model.at_lag_sq(spec.lag_sq(p, 0)), S::zero()))
                    .collect();
                fft_nd(spec, &plans, &mut buf);
                let max = buf.iter().map(|c| c.re).fold(S::zero(), S::max);
                let min = buf.iter().map(|c| c.re).fold(S::infinity(), S::min);
                let tol = S::of(cfg.eigen_tolerance) * max;
                let mut warnings = Vec::new();
                if min < -tol {
                    warnings.push(format!(
                        "circulant embedding is not nonnegative definite (min eigenvalue {:e}, max {:e}); \
                         falling back to dense Cholesky",
                        min.as_f64(),
                        max.as_f64()
                    ));
                    if n > cfg.dense_cap {
                        return Err(Error::Numeric(format!(
                            "{} and grid of {n} points exceeds dense cap {}",
                            warnings[0], cfg.dense_cap
                        )));
                    }
                    let context = warnings[0].clone();
                    return Self::dense(spec, model, cfg.dense_cap, warnings)
                        .map_err(|e| Error::Numeric(format!("{context}: {e}")));
                }
                let clipped = buf.iter().filter(|c| c.re < S::zero()).count();
                if clipped > 0 {
                    warnings.push(format!(
                        "clipped {clipped} slightly negative circulant eigenvalues (min {:e})",
                        min.as_f64()
                    ));
                }
                let m = S::of_usize(n);
                let sqrt_eig = buf.iter().map(|c| (c.re.max(S::zero()) / m).sqrt()).collect();
                Ok(FieldSampler {
                    spec: spec.clone(),
                    engine: Engine::Circulant { sqrt_eig, plans },
                    report: SamplingReport { method, jitter: 0.0, warnings },
                })
            }
        }
    }

    fn dense(
        spec: &GridSpec<S>,
        model: &CovarianceModel<S>,
        cap: usize,
        warnings: Vec<String>,
    ) -> Result<Self> {
        let cov = covariance_matrix(spec, model, cap)?;
        let (l, jitter) = cov.cholesky()?;
        Ok(FieldSampler {
            spec: spec.clone(),
            engine: Engine::Dense(l),
            report: SamplingReport {
                method: SamplingMethod::DenseCholesky,
                jitter: jitter.as_f64(),
                warnings,
            },
        })
    }

    pub fn spec(&self) -> &GridSpec<S> {
        &self.spec
    }

    pub fn report(&self) -> &SamplingReport {
        &self.report
    }

    /// Draws one realization; identical seeds give bit-identical fields.
    pub fn sample(&self, seed: RngSeed) -> GridField<S> {
        let mut rng = seed.rng();
        let n = self.spec.len();
        let values = match &self.engine {
            Engine::Dense(l) => {
                let z: Vec<S> = (0..n).map(|_| S::standard_normal(&mut rng)).collect();
                l.mul_vec(&z)
            }
            Engine::Separable(factors) => {
                let mut x: Vec<S> = (0..n).map(|_| S::standard_normal(&mut rng)).collect();
                for (a, l) in factors.iter().enumerate() {
                    apply_along_axis(&self.spec, a, &mut x, |line| l.mul_vec(line));
                }
                x
            }
            Engine::Circulant { sqrt_eig, plans } => {
                let mut buf: Vec<Complex<S>> = sqrt_eig
                    .iter()
                    .map(|&s| {
                        let re = S::standard_normal(&mut rng);
                        let im = S::standard_normal(&mut rng);
                        Complex::new(s * re, s * im)
                    })
                    .collect();
                fft_nd(&self.spec, plans, &mut buf);
                buf.into_iter().map(|c| c.re).collect()
            }
        };
        GridField::new(self.spec.clone(), values).expect("sampler produces finite values")
    }
}

/// One-shot convenience wrapper around [`FieldSampler`].
pub fn sample_field<S: Scalar>(
    spec: &GridSpec<S>,
    model: &CovarianceModel<S>,
    seed: RngSeed,
) -> Result<GridField<S>> {
    Ok(FieldSampler::new(spec, model, &SamplerConfig::default())?.sample(seed))
}

fn apply_along_axis<G: Scalar, T: Copy>(
    spec: &GridSpec<G>,
    axis: usize,
    data: &mut [T],
    f: impl Fn(&[T]) -> Vec<T>,
) {
    let n = spec.sizes()[axis];
    let stride = spec.strides()[axis];
    let total = data.len();
    let mut line = Vec::with_capacity(n);
    for start in 0..total {
        // a line starts at every index whose coordinate along `axis` is 0
        if (start / stride) % n != 0 {
            continue;
        }
        line.clear();
        line.extend((0..n).map(|k| data[start + k * stride]));
        let out = f(&line);
        for (k, v) in out.into_iter().enumerate() {
            data[start + k * stride] = v;
        }
    }
}

fn fft_nd<S: Scalar>(spec: &GridSpec<S>, plans: &[Arc<dyn Fft<S>>], buf: &mut [Complex<S>]) {
    for (a, plan) in plans.iter().enumerate() {
        apply_along_axis(spec, a, buf, |line| {
            let mut v = line.to_vec();
            plan.process(&mut v);
            v
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> CovarianceModel<f64> {
        CovarianceModel::squared_exponential(100.0).unwrap()
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = GridSpec::<f64>::unit_box(2, 16).unwrap();
        let a = sample_field(&spec, &model(), RngSeed(7)).unwrap();
        let b = sample_field(&spec, &model(), RngSeed(7)).unwrap();
        let c = sample_field(&spec, &model(), RngSeed(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn picks_engine_by_topology() {
        let b = GridSpec::<f64>::unit_box(2, 8).unwrap();
        let t = GridSpec::<f64>::unit_torus(2, 8).unwrap();
        let cfg = SamplerConfig::default();
        assert_eq!(
            FieldSampler::new(&b, &model(), &cfg).unwrap().report().method,
            SamplingMethod::SeparableCholesky
        );
        assert_eq!(
            FieldSampler::new(&t, &model(), &cfg).unwrap().report().method,
            SamplingMethod::CirculantEmbedding
        );
        let dense = SamplerConfig { prefer: Some(SamplingMethod::DenseCholesky), ..cfg };
        let s = FieldSampler::new(&b, &model(), &dense).unwrap();
        assert_eq!(s.report().method, SamplingMethod::DenseCholesky);
        assert!(s.report().jitter <= 1e-10);
    }

    #[test]
    fn indefinite_circulant_falls_back_with_warning() {
        // a wide kernel on a coarse torus: the wrapped kernel is not PSD
        let spec = GridSpec::<f64>::new(vec![6], 1.0, Topology::Torus).unwrap();
        let wide = CovarianceModel::squared_exponential(2.0).unwrap();
        // the dense fallback sees the same indefinite matrix and must give up
        let s = FieldSampler::new(&spec, &wide, &SamplerConfig::default());
        match s {
            Err(Error::Numeric(msg)) => assert!(msg.contains("falling back")),
            Err(e) => panic!("unexpected error {e}"),
            Ok(_) => panic!("indefinite covariance accepted"),
        }
    }

    #[test]
    fn f32_sampling_works() {
        let spec = GridSpec::<f32>::unit_box(2, 12).unwrap();
        let m = CovarianceModel::squared_exponential(50.0f32).unwrap();
        let f = sample_field(&spec, &m, RngSeed(1)).unwrap();
        assert_eq!(f.values().len(), 144);
    }
}
