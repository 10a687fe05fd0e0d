//! Minimal dense symmetric linear algebra for Gaussian sampling.

use crate::error::{Error, Result};
use crate::Scalar;

/// Jitter levels tried in order when a Cholesky factorization fails.
pub const JITTER_SCHEDULE: [f64; 4] = [0.0, 1e-12, 1e-11, 1e-10];

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![S::zero(); n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_exactly_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Lower Cholesky factor of `self + jitter * I`.
    fn cholesky_with(&self, jitter: S) -> Option<LowerTriangular<S>> {
        let n = self.n;
        let mut l = vec![S::zero(); n * n];
        for j in 0..n {
            let mut d = self.get(j, j) + jitter;
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > S::zero()) {
                return None;
            }
            let djj = d.sqrt();
            l[j * n + j] = djj;
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / djj;
            }
        }
        Some(LowerTriangular { n, data: l })
    }

    /// Cholesky factorization following [`JITTER_SCHEDULE`]. Returns the
    /// factor together with the jitter that was needed.
    pub fn cholesky(&self) -> Result<(LowerTriangular<S>, S)> {
        for &j in &JITTER_SCHEDULE {
            let jitter = S::of(j);
            if let Some(l) = self.cholesky_with(jitter) {
                return Ok((l, jitter));
            }
        }
        Err(Error::Numeric(format!(
            "covariance of size {} is not positive definite after jitter {:e}",
            self.n,
            JITTER_SCHEDULE[JITTER_SCHEDULE.len() - 1]
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> LowerTriangular<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.n + j]
    }

    /// `L z`.
    pub fn mul_vec(&self, z: &[S]) -> Vec<S> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let row = &self.data[i * n..i * n + i + 1];
                row.iter().zip(&z[..=i]).map(|(&a, &b)| a * b).sum()
            })
            .collect()
    }
}
