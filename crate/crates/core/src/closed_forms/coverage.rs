//! Expected Euler characteristic of a union of n random L∞ balls on the
//! flat unit torus, as an exact polynomial in τ = (2ε)^d.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageBase {
    /// E_1 = n(1 − τ)^{n−1}, the expected number of gaps on the circle.
    #[default]
    GapCount,
    /// E_1 = n(1 − τ^{n−1}).
    AsPrinted,
}

/// `coeffs[k]` multiplies τ^k.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveragePolynomial {
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<BigInt>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// E_d from E_1 via E_d(τ) = d/dτ [τ E_{d−1}(τ)].
pub fn coverage_polynomial(n: usize, d: usize, base: CoverageBase) -> Result<CoveragePolynomial> {
    if n == 0 || d == 0 {
        return input("coverage polynomial needs n >= 1 and d >= 1");
    }
    let mut coeffs: Vec<BigInt> = match base {
        CoverageBase::GapCount => (0..n)
            .map(|k| {
                let c = BigInt::from(n) * binomial(n - 1, k);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect(),
        CoverageBase::AsPrinted => {
            let mut c = vec![BigInt::zero(); n];
            c[0] += BigInt::from(n);
            c[n - 1] -= BigInt::from(n);
            c
        }
    };
    for _ in 1..d {
        // τ·Σ c_k τ^k = Σ c_k τ^{k+1}, differentiated: Σ (k+1) c_k τ^k
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= BigInt::from(k + 1);
        }
    }
    Ok(CoveragePolynomial { n, d, coeffs })
}

impl CoveragePolynomial {
    /// Horner evaluation in exact rational arithmetic, rounded once.
    pub fn eval(&self, tau: f64) -> Result<f64> {
        let t = BigRational::from_float(tau).ok_or_else(|| Error::Input(format!("tau = {tau} is not finite")))?;
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + BigRational::from_integer(c.clone());
        }
        acc.to_f64().ok_or_else(|| Error::Numeric("coverage polynomial overflow".into()))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau < 1.0) {
        return input(format!("tau must lie in (0, 1), got {tau}"));
    }
    Ok(())
}

pub fn torus_coverage_expectation<S: Scalar>(n: usize, d: usize, tau: S) -> Result<S> {
    torus_coverage_expectation_with(n, d, tau, CoverageBase::GapCount)
}

pub fn torus_coverage_expectation_with<S: Scalar>(n: usize, d: usize, tau: S, base: CoverageBase) -> Result<S> {
    check_tau(tau.as_f64())?;
    Ok(S::of(coverage_polynomial(n, d, base)?.eval(tau.as_f64())?))
}

/// (1/τ) ln(1/τ): the rough number of balls at which coverage sets in.
pub fn coverage_scale<S: Scalar>(tau: S) -> Result<S> {
    check_tau(tau.as_f64())?;
    Ok(tau.recip() * tau.recip().ln())
}
