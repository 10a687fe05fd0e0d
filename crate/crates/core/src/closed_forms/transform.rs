//! Piecewise C² transforms G and the expected Euler integral of G∘f.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gkf::LKVector;
use super::hermite::hermite_f64;
use super::quadrature::{gaussian_expectation, QuadratureSpec};
use crate::error::{input, Error, Result};
use crate::Scalar;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    General,
}

#[derive(Clone)]
pub struct Piece {
    pub value: RealFn,
    pub derivative: RealFn,
}

/// `pieces[k]` applies on `[breakpoints[k-1], breakpoints[k])`, the first
/// and last pieces extending to ∓∞.
#[derive(Clone)]
pub struct TransformSpec {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Piece>,
    pub monotonicity: Monotonicity,
    identity: bool,
}

impl fmt::Debug for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformSpec")
            .field("breakpoints", &self.breakpoints)
            .field("pieces", &self.pieces.len())
            .field("monotonicity", &self.monotonicity)
            .finish()
    }
}

impl TransformSpec {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Piece>, monotonicity: Monotonicity) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return input(format!("{} pieces need {} breakpoints", pieces.len(), pieces.len() - 1));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints.iter().any(|b| !b.is_finite()) {
            return input("breakpoints must be finite and strictly increasing");
        }
        Ok(TransformSpec { breakpoints, pieces, monotonicity, identity: false })
    }

    pub fn smooth(
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dg: impl Fn(f64) -> f64 + Send + Sync + 'static,
        monotonicity: Monotonicity,
    ) -> Self {
        TransformSpec {
            breakpoints: vec![],
            pieces: vec![Piece { value: Arc::new(g), derivative: Arc::new(dg) }],
            monotonicity,
            identity: false,
        }
    }

    pub fn identity() -> Self {
        TransformSpec { identity: true, ..Self::smooth(|x| x, |_| 1.0, Monotonicity::Increasing) }
    }

    pub fn negation() -> Self {
        Self::smooth(|x| -x, |_| -1.0, Monotonicity::Decreasing)
    }

    pub fn cube() -> Self {
        Self::smooth(|x| x * x * x, |x| 3.0 * x * x, Monotonicity::Increasing)
    }

    fn piece(&self, x: f64) -> &Piece {
        &self.pieces[self.breakpoints.partition_point(|&b| b <= x)]
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.piece(x).value)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.piece(x).derivative)(x)
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }
}

fn two_pi_pow(j: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powf(j as f64 / 2.0)
}

/// E[∫ f dχ] = −L_1/√(2π).
pub fn expected_euler_integral_identity<S: Scalar>(lk: &LKVector<S>) -> S {
    S::of(-lk.get(1).as_f64() / two_pi_pow(1))
}

/// χ(M)E[G(f)] + Σ_{j>=1} (−1)^j L_j ⟨H_{j−1}, sgn(G')^j G'⟩ / (2π)^{j/2}.
fn general_form(ts: &TransformSpec, lk: &[f64], q: &QuadratureSpec) -> Result<f64> {
    let mut total = lk[0] * gaussian_expectation(&|x| ts.eval(x), q)?;
    for (j, &l) in lk.iter().enumerate().skip(1) {
        let inner = gaussian_expectation(
            &|x| {
                let d = ts.derivative(x);
                let s = if j % 2 == 0 { 1.0 } else { d.signum() };
                hermite_f64(j as i32 - 1, x) * s * d
            },
            q,
        )?;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * l * inner / two_pi_pow(j);
    }
    Ok(total)
}

/// Σ_j (±1)^j L_j ⟨H_j, G⟩ / (2π)^{j/2}, the form for monotone G.
fn monotone_form(ts: &TransformSpec, lk: &[f64], q: &QuadratureSpec) -> Result<f64> {
    let mut total = 0.0;
    for (j, &l) in lk.iter().enumerate() {
        let inner = gaussian_expectation(&|x| hermite_f64(j as i32, x) * ts.eval(x), q)?;
        let sign = match ts.monotonicity {
            Monotonicity::Increasing if j % 2 == 1 => -1.0,
            _ => 1.0,
        };
        total += sign * l * inner / two_pi_pow(j);
    }
    Ok(total)
}

/// Expected lower Euler integral of G∘f. For monotone G the monotone form is
/// evaluated too and the two must agree to within the quadrature tolerance.
pub fn expected_euler_integral<S: Scalar>(ts: &TransformSpec, lk: &LKVector<S>, q: &QuadratureSpec) -> Result<S> {
    if ts.is_identity() {
        return Ok(expected_euler_integral_identity(lk));
    }
    let l: Vec<f64> = lk.values.iter().map(|v| v.as_f64()).collect();
    let mut q = q.clone();
    q.breakpoints.extend_from_slice(&ts.breakpoints);
    let general = general_form(ts, &l, &q)?;
    if ts.monotonicity != Monotonicity::General {
        let mono = monotone_form(ts, &l, &q)?;
        let scale = l.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        if (general - mono).abs() > 100.0 * q.tolerance * scale {
            return Err(Error::Consistency(format!(
                "general form {general} and monotone form {mono} disagree"
            )));
        }
    }
    Ok(S::of(general))
}

/// Transforms of vector-valued fields need Gaussian Minkowski functionals of
/// general sets, which are not available; only `k = 1` is evaluated.
pub fn expected_euler_integral_general<S: Scalar>(
    k: usize,
    ts: &TransformSpec,
    lk: &LKVector<S>,
    q: &QuadratureSpec,
) -> Result<S> {
    if k != 1 {
        return Err(Error::Unsupported(format!(
            "expected Euler integrals of {k}-vector fields"
        )));
    }
    expected_euler_integral(ts, lk, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::lk_box;

    #[test]
    fn identity_matches_quadrature() {
        let lk = lk_box(2, 1.0f64, 200.0).unwrap();
        let exact = expected_euler_integral(&TransformSpec::identity(), &lk, &QuadratureSpec::default()).unwrap();
        let generic = TransformSpec::smooth(|x| x, |_| 1.0, Monotonicity::Increasing);
        let quad = expected_euler_integral(&generic, &lk, &QuadratureSpec::default()).unwrap();
        assert!((exact - quad).abs() < 1e-8);
        assert!((exact + 2.0 * 200f64.sqrt() / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unsupported_vector_fields() {
        let lk = lk_box(2, 1.0, 1.0).unwrap();
        let r = expected_euler_integral_general(2, &TransformSpec::identity(), &lk, &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn piecewise_lookup() {
        let p = |c: f64| Piece { value: Arc::new(move |_| c), derivative: Arc::new(|_| 0.0) };
        let ts = TransformSpec::new(vec![0.0], vec![p(-1.0), p(1.0)], Monotonicity::General).unwrap();
        assert_eq!((ts.eval(-0.1), ts.eval(0.0)), (-1.0, 1.0));
        assert!(TransformSpec::new(vec![0.0], vec![p(0.0)], Monotonicity::General).is_err());
    }
}
