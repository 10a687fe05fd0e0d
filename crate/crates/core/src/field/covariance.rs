use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::linalg::SymMatrix;
use crate::error::{input, Error, Result};
use crate::Scalar;

/// Default point-count cap for dense covariance matrices.
pub const DENSE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CovarianceKind {
    SquaredExponential,
}

/// Isotropic stationary covariance `R(p) = exp(-alpha |p|^2)` with unit variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceModel<S> {
    pub kind: CovarianceKind,
    pub alpha: S,
}

impl<S: Scalar> CovarianceModel<S> {
    pub fn squared_exponential(alpha: S) -> Result<Self> {
        if !(alpha.is_finite() && alpha > S::zero()) {
            return input(format!("alpha must be positive and finite, got {alpha}"));
        }
        Ok(CovarianceModel { kind: CovarianceKind::SquaredExponential, alpha })
    }

    /// Covariance at squared lag `r2 = |p - q|^2`.
    #[inline]
    pub fn at_lag_sq(&self, r2: S) -> S {
        match self.kind {
            CovarianceKind::SquaredExponential => (-self.alpha * r2).exp(),
        }
    }

    /// One-dimensional factor of a separable covariance at scalar lag `d`.
    /// The squared exponential satisfies `R(p) = prod_a r(p_a)`.
    #[inline]
    pub fn axis_factor(&self, d: S) -> S {
        self.at_lag_sq(d * d)
    }

    pub fn is_separable(&self) -> bool {
        matches!(self.kind, CovarianceKind::SquaredExponential)
    }
}

/// `lambda_2 = -d^2 R / dp_i^2 at 0`, the variance of a directional derivative.
/// For the squared exponential this is `2 alpha`.
pub fn second_spectral_moment<S: Scalar>(model: &CovarianceModel<S>) -> S {
    match model.kind {
        CovarianceKind::SquaredExponential => S::of(2.0) * model.alpha,
    }
}

/// Dense covariance over all grid points; torus lags use minimal wrap per axis.
pub fn covariance_matrix<S: Scalar>(
    spec: &GridSpec<S>,
    model: &CovarianceModel<S>,
    cap: usize,
) -> Result<SymMatrix<S>> {
    let n = spec.len();
    if n > cap {
        return Err(Error::Size { what: "grid points for dense covariance", actual: n, cap });
    }
    let mut m = SymMatrix::zeros(n);
    for p in 0..n {
        m.set(p, p, S::one());
        for q in 0..p {
            let c = model.at_lag_sq(spec.lag_sq(p, q));
            m.set(p, q, c);
            m.set(q, p, c);
        }
    }
    Ok(m)
}
