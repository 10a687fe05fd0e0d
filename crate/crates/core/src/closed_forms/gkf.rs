//! Lipschitz–Killing curvatures of flat domains and the Gaussian kinematic
//! expectations built from them.

use serde::{Deserialize, Serialize};
use libm::lgamma as ln_gamma;

use super::hermite::{hermite_f64, normal_cdf, normal_pdf, normal_sf};
use crate::error::{input, Result};
use crate::Scalar;

/// L_0, ..., L_N of a domain under the metric induced by the field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LKVector<S> {
    pub values: Vec<S>,
}

impl<S: Scalar> LKVector<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return input("an LK vector needs at least L_0");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return input("LK curvatures must be finite");
        }
        Ok(LKVector { values })
    }

    /// Dimension N.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, j: usize) -> S {
        self.values.get(j).copied().unwrap_or_else(S::zero)
    }

    pub fn chi(&self) -> S {
        self.values[0]
    }
}

fn check_geometry(n: usize, t: f64, lambda2: f64) -> Result<()> {
    if !(1..=3).contains(&n) {
        return input(format!("dimension must be 1, 2 or 3, got {n}"));
    }
    if !(t > 0.0 && t.is_finite() && lambda2 > 0.0 && lambda2.is_finite()) {
        return input("side length and second spectral moment must be positive");
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The box [0,T]^N with metric λ₂·(Euclidean): L_j = C(N,j)·(T√λ₂)^j.
pub fn lk_box<S: Scalar>(n: usize, t: S, lambda2: S) -> Result<LKVector<S>> {
    check_geometry(n, t.as_f64(), lambda2.as_f64())?;
    let s = t.as_f64() * lambda2.as_f64().sqrt();
    LKVector::new((0..=n).map(|j| S::of(binom(n, j) * s.powi(j as i32))).collect())
}

/// The flat torus of side T: only the volume term L_N survives.
pub fn lk_torus<S: Scalar>(n: usize, t: S, lambda2: S) -> Result<LKVector<S>> {
    check_geometry(n, t.as_f64(), lambda2.as_f64())?;
    let s = t.as_f64() * lambda2.as_f64().sqrt();
    let mut v = vec![S::zero(); n + 1];
    v[n] = S::of(s.powi(n as i32));
    LKVector::new(v)
}

fn ln_ball_volume(m: usize) -> f64 {
    0.5 * m as f64 * std::f64::consts::PI.ln() - ln_gamma(0.5 * m as f64 + 1.0)
}

/// [n j] = C(n,j) ω_n / (ω_{n−j} ω_j), ω_m the volume of the unit m-ball.
pub fn flag_coefficient(n: usize, j: usize) -> Result<f64> {
    if j > n {
        return input(format!("flag coefficient needs j <= n, got [{n} {j}]"));
    }
    let ln = binom(n, j).ln() + ln_ball_volume(n) - ln_ball_volume(n - j) - ln_ball_volume(j);
    Ok(ln.exp())
}

/// M_j of the half-line [u, ∞): M_0 = 1 − Φ(u), M_j = H_{j−1}(u) φ(u).
pub fn gaussian_minkowski_halfline<S: Scalar>(j: usize, u: S) -> S {
    let u = u.as_f64();
    S::of(if j == 0 { normal_sf(u) } else { hermite_f64(j as i32 - 1, u) * normal_pdf(u) })
}

/// E[L_i(A_u)] = Σ_j [i+j j] (2π)^{−j/2} L_{i+j} M_j([u,∞)).
pub fn expected_lk_excursion<S: Scalar>(i: usize, u: S, lk: &LKVector<S>) -> Result<S> {
    let n = lk.dim();
    if i > n {
        return input(format!("LK index {i} exceeds dimension {n}"));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut total = 0.0;
    for j in 0..=(n - i) {
        total += flag_coefficient(i + j, j)?
            * two_pi.powf(-(j as f64) / 2.0)
            * lk.get(i + j).as_f64()
            * gaussian_minkowski_halfline(j, u).as_f64();
    }
    Ok(S::of(total))
}

/// E[χ(A_u)], the i = 0 case.
pub fn expected_ec_excursion<S: Scalar>(u: S, lk: &LKVector<S>) -> S {
    expected_lk_excursion(0, u, lk).expect("index 0 is always valid")
}

/// E[χ(B(f,a))] for the sublevel barcode of a real field, essential bars
/// cut at `a`: χ(M)(φ(a) + aΦ(a)) + φ(a) Σ_{j>=1} (2π)^{−j/2} L_j H_{j−2}(−a).
pub fn expected_barcode_ec<S: Scalar>(a: S, lk: &LKVector<S>, chi_m: i64) -> S {
    let a = a.as_f64();
    if a == f64::NEG_INFINITY {
        return S::zero();
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let phi = normal_pdf(a);
    let mut total = chi_m as f64 * (phi + a * normal_cdf(a));
    for j in 1..=lk.dim() {
        total += phi * two_pi.powf(-(j as f64) / 2.0) * lk.get(j).as_f64() * hermite_f64(j as i32 - 2, -a);
    }
    S::of(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let lk = lk_box(2, 1.0, 1.0).unwrap();
        assert_eq!(lk.values, vec![1.0, 2.0, 1.0]);
        let lk = lk_box(2, 1.0, 200.0).unwrap();
        assert!((lk.values[1] - 2.0 * 200f64.sqrt()).abs() < 1e-12);
        assert!((lk.values[2] - 200.0).abs() < 1e-12);
        assert!(lk_box(4, 1.0, 1.0).is_err());
    }

    #[test]
    fn flag_values() {
        assert!((flag_coefficient(2, 1).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        for n in 0..6 {
            assert!((flag_coefficient(n, 0).unwrap() - 1.0).abs() < 1e-13);
            assert!((flag_coefficient(n, n).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn halfline_functionals() {
        assert!((gaussian_minkowski_halfline(0, 0.0) - 0.5f64).abs() < 1e-15);
        assert!((gaussian_minkowski_halfline(1, 0.0) - 0.398_942_280_401_432_7f64).abs() < 1e-15);
        assert!(gaussian_minkowski_halfline(3, 1.0f64).abs() < 1e-15);
    }

    #[test]
    fn ec_limits() {
        let lk = lk_box(2, 1.0f64, 200.0).unwrap();
        assert!((expected_ec_excursion(-40.0, &lk) - 1.0).abs() < 1e-12);
        assert!(expected_ec_excursion(40.0, &lk).abs() < 1e-12);
        assert!(expected_barcode_ec(-40.0, &lk, 1).abs() < 1e-12);
    }
}
