//! Probabilists' Hermite polynomials and standard normal helpers.

use libm::erfc;

use crate::Scalar;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Upper tail 1 − Φ(x), without cancellation for large x.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Mills ratio (1 − Φ(x)) / φ(x).
pub fn mills_ratio(x: f64) -> f64 {
    if x <= 5.0 {
        return normal_sf(x) / normal_pdf(x);
    }
    // continued fraction 1/(x+ 1/(x+ 2/(x+ 3/(x+ ...)))), evaluated bottom-up
    let mut t = x;
    for k in (1..=60).rev() {
        t = x + k as f64 / t;
    }
    1.0 / t
}

/// `H_n(x)` for `n >= 0` by forward recurrence, with `H_{-1}` the Mills
/// ratio. Computed in `f64`.
pub fn hermite_f64(n: i32, x: f64) -> f64 {
    assert!(n >= -1, "Hermite degree must be >= -1");
    match n {
        -1 => mills_ratio(x),
        0 => 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for k in 1..n {
                let next = x * cur - k as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

pub fn hermite<S: Scalar>(n: i32, x: S) -> S {
    S::of(hermite_f64(n, x.as_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!([hermite_f64(0, 2.0), hermite_f64(1, 2.0), hermite_f64(2, 2.0)], [1.0, 2.0, 3.0]);
        assert_eq!(hermite_f64(3, 1.5), 1.5f64.powi(3) - 3.0 * 1.5);
    }

    #[test]
    fn minus_one_at_zero() {
        assert!((hermite_f64(-1, 0.0) - SQRT_2PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn mills_ratio_branches_meet() {
        let direct = normal_sf(5.0) / normal_pdf(5.0);
        let mut t = 5.0;
        for k in (1..=60).rev() {
            t = 5.0 + k as f64 / t;
        }
        assert!((direct - 1.0 / t).abs() / direct < 1e-12);
        // R(x) ~ 1/x - 1/x^3 for large x
        let x = 30.0;
        assert!((mills_ratio(x) - (1.0 / x - 1.0 / x.powi(3) + 3.0 / x.powi(5))).abs() < 1e-9);
    }
}
