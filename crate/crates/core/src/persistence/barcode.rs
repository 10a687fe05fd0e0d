use serde::{Deserialize, Serialize};

use crate::complex::TimeAxis;
use crate::error::{input, Result};
use crate::Scalar;

/// One persistence interval `[birth, death)` in filtration time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bar<S> {
    pub birth: S,
    /// `+inf` for essential classes.
    pub death: S,
    pub degree: usize,
}

impl<S: Scalar> Bar<S> {
    pub fn new(birth: S, death: S, degree: usize) -> Self {
        debug_assert!(birth <= death);
        Bar { birth, death, degree }
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn length(&self) -> S {
        self.death - self.birth
    }

    pub fn is_alive_at(&self, t: S) -> bool {
        self.birth <= t && t < self.death
    }
}

/// Bars of a filtration, including zero-length ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<S> {
    pub(crate) bars: Vec<Bar<S>>,
    pub(crate) axis: TimeAxis,
    pub(crate) horizon: S,
    pub(crate) max_dim: usize,
}

impl<S: Scalar> Barcode<S> {
    pub fn new(bars: Vec<Bar<S>>, axis: TimeAxis, horizon: S) -> Self {
        let max_dim = bars.iter().map(|b| b.degree).max().unwrap_or(0);
        Barcode { bars, axis, horizon, max_dim }
    }

    pub fn bars(&self) -> &[Bar<S>] {
        &self.bars
    }

    pub fn time_axis(&self) -> TimeAxis {
        self.axis
    }

    /// Largest entrance time of the source filtration.
    pub fn horizon(&self) -> S {
        self.horizon
    }

    /// Top dimension of the source complex.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn in_degree(&self, k: usize) -> impl Iterator<Item = &Bar<S>> {
        self.bars.iter().filter(move |b| b.degree == k)
    }

    /// Bars with positive length.
    pub fn nonzero(&self) -> impl Iterator<Item = &Bar<S>> {
        self.bars.iter().filter(|b| b.birth < b.death)
    }

    /// Lengths of the bars in degree `k`, essential bars cut at `at`,
    /// sorted longest first.
    pub fn clipped_lengths(&self, k: usize, at: S) -> Vec<S> {
        let mut ls: Vec<S> = self
            .in_degree(k)
            .filter(|b| b.birth <= at)
            .map(|b| b.death.min(at) - b.birth)
            .collect();
        ls.sort_by(|a, b| crate::scalar::cmp(b, a));
        ls
    }
}

/// Betti numbers β_0, β_1, ...; trailing zeros are dropped so vectors from
/// different sources compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn new(mut v: Vec<usize>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        BettiVector(v)
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Alternating sum Σ (−1)^k β_k.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Counts bars alive at `t` using the half-open rule `birth <= t < death`.
pub fn betti_at<S: Scalar>(bc: &Barcode<S>, t: S) -> BettiVector {
    let mut v = vec![0usize; bc.max_dim + 1];
    for b in bc.bars.iter().filter(|b| b.is_alive_at(t)) {
        v[b.degree] += 1;
    }
    BettiVector::new(v)
}

/// Σ (−1)^degree · length over the bars cut off at `a`. Bars born after `a`
/// are dropped and essential bars end at `a`.
pub fn barcode_euler_char<S: Scalar>(bc: &Barcode<S>, a: S) -> Result<S> {
    if a.is_nan() || a == S::neg_infinity() {
        return input("barcode Euler characteristic needs a finite or +inf cut-off");
    }
    if a.is_infinite() && bc.bars.iter().any(Bar::is_essential) {
        return input("essential bars have infinite length without a finite cut-off");
    }
    Ok(bc
        .bars
        .iter()
        .filter(|b| b.birth <= a)
        .map(|b| {
            let l = b.death.min(a) - b.birth;
            if b.degree % 2 == 0 {
                l
            } else {
                -l
            }
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(bars: &[(f64, f64, usize)]) -> Barcode<f64> {
        Barcode::new(
            bars.iter().map(|&(b, d, k)| Bar::new(b, d, k)).collect(),
            TimeAxis::Sublevel,
            6.0,
        )
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(barcode_euler_char(&bc(&[(0.0, 1.0, 0)]), 1.0).unwrap(), 1.0);
        assert_eq!(barcode_euler_char(&bc(&[(0.0, 2.0, 0), (1.0, 2.0, 1)]), 2.0).unwrap(), 1.0);
        assert_eq!(barcode_euler_char(&bc(&[(0.0, f64::INFINITY, 0)]), 2.5).unwrap(), 2.5);
        assert_eq!(barcode_euler_char(&bc(&[(3.0, 4.0, 0)]), 2.0).unwrap(), 0.0);
        assert!(barcode_euler_char(&bc(&[]), f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn betti_half_open() {
        let b = bc(&[(0.0, 5.0, 0), (1.0, 3.0, 0), (3.0, f64::INFINITY, 0)]);
        assert_eq!(betti_at(&b, 3.0).get(0), 2);
        assert_eq!(betti_at(&b, -1.0), BettiVector::default());
        assert_eq!(betti_at(&b, 5.0).get(0), 1);
    }

    #[test]
    fn betti_vector_trims_and_alternates() {
        assert_eq!(BettiVector::new(vec![1, 2, 1, 0, 0]), BettiVector::new(vec![1, 2, 1]));
        assert_eq!(BettiVector::new(vec![1, 2, 1]).euler(), 0);
    }
}
