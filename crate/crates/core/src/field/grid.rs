use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Box,
    Torus,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Box => "box",
            Topology::Torus => "torus",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "box" => Ok(Topology::Box),
            "torus" => Ok(Topology::Torus),
            other => input(format!("unknown topology `{other}`")),
        }
    }
}

/// Regular grid over `[0, side]^dim` (box) or the flat torus of that side.
///
/// Box grids place `sizes[a]` points including both endpoints, so the spacing
/// is `side / (sizes[a] - 1)`. Torus grids identify the endpoints and use
/// `side / sizes[a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<S> {
    sizes: Vec<usize>,
    side: S,
    topology: Topology,
}

impl<S: Scalar> GridSpec<S> {
    pub fn new(sizes: Vec<usize>, side: S, topology: Topology) -> Result<Self> {
        if sizes.is_empty() || sizes.len() > 3 {
            return input(format!("grid dimension must be 1, 2 or 3, got {}", sizes.len()));
        }
        if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
            return input(format!("every axis needs at least 2 points, got {n}"));
        }
        if !(side.is_finite() && side > S::zero()) {
            return input(format!("side length must be positive and finite, got {side}"));
        }
        Ok(GridSpec { sizes, side, topology })
    }

    /// Unit box `[0,1]^dim` with `n` points per axis.
    pub fn unit_box(dim: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; dim], S::one(), Topology::Box)
    }

    pub fn unit_torus(dim: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; dim], S::one(), Topology::Torus)
    }

    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn side(&self) -> S {
        self.side
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_torus(&self) -> bool {
        self.topology == Topology::Torus
    }

    /// Spacing along `axis`.
    pub fn spacing(&self, axis: usize) -> S {
        let n = self.sizes[axis];
        match self.topology {
            Topology::Box => self.side / S::of_usize(n - 1),
            Topology::Torus => self.side / S::of_usize(n),
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major strides: the last axis varies fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dim()];
        for a in (0..self.dim().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * self.sizes[a + 1];
        }
        strides
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for a in (0..self.dim()).rev() {
            out[a] = index % self.sizes[a];
            index /= self.sizes[a];
        }
        out
    }

    /// Physical coordinate of grid index `i` along `axis`.
    pub fn position(&self, axis: usize, i: usize) -> S {
        S::of_usize(i) * self.spacing(axis)
    }

    /// Signed-free lag between indices `i` and `j` along `axis`, using the
    /// minimal wrap distance on a torus.
    pub fn lag(&self, axis: usize, i: usize, j: usize) -> S {
        let n = self.sizes[axis];
        let d = i.abs_diff(j);
        let steps = match self.topology {
            Topology::Box => d,
            Topology::Torus => d.min(n - d),
        };
        S::of_usize(steps) * self.spacing(axis)
    }

    /// Squared Euclidean lag between two flat indices.
    pub fn lag_sq(&self, p: usize, q: usize) -> S {
        let (cp, cq) = (self.coords(p), self.coords(q));
        (0..self.dim())
            .map(|a| {
                let l = self.lag(a, cp[a], cq[a]);
                l * l
            })
            .sum()
    }
}

/// Scalar field sampled on a [`GridSpec`], stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<S> {
    spec: GridSpec<S>,
    values: Vec<S>,
}

impl<S: Scalar> GridField<S> {
    pub fn new(spec: GridSpec<S>, values: Vec<S>) -> Result<Self> {
        if values.len() != spec.len() {
            return input(format!(
                "field has {} values but the grid has {} points",
                values.len(),
                spec.len()
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return input(format!("field value at index {i} is not finite"));
        }
        Ok(GridField { spec, values })
    }

    /// Samples `f` at every grid point; `f` receives physical coordinates.
    pub fn from_fn(spec: GridSpec<S>, f: impl Fn(&[S]) -> S) -> Result<Self> {
        let mut pos = vec![S::zero(); spec.dim()];
        let values = (0..spec.len())
            .map(|i| {
                for (a, c) in spec.coords(i).into_iter().enumerate() {
                    pos[a] = spec.position(a, c);
                }
                f(&pos)
            })
            .collect();
        Self::new(spec, values)
    }

    pub fn constant(spec: GridSpec<S>, c: S) -> Result<Self> {
        let n = spec.len();
        Self::new(spec, vec![c; n])
    }

    pub fn spec(&self) -> &GridSpec<S> {
        &self.spec
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    /// Applies `g` pointwise. Panics if `g` produces a non-finite value.
    pub fn map(&self, g: impl Fn(S) -> S) -> Self {
        let values: Vec<S> = self.values.iter().map(|&v| g(v)).collect();
        assert!(values.iter().all(|v| v.is_finite()), "map produced a non-finite value");
        GridField { spec: self.spec.clone(), values }
    }

    pub fn negated(&self) -> Self {
        self.map(|v| -v)
    }

    pub fn min(&self) -> S {
        self.values.iter().copied().fold(S::infinity(), S::min)
    }

    pub fn max(&self) -> S {
        self.values.iter().copied().fold(S::neg_infinity(), S::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_depends_on_topology() {
        let b = GridSpec::<f64>::new(vec![5], 1.0, Topology::Box).unwrap();
        let t = GridSpec::<f64>::new(vec![5], 1.0, Topology::Torus).unwrap();
        assert_eq!(b.spacing(0), 0.25);
        assert_eq!(t.spacing(0), 0.2);
    }

    #[test]
    fn index_coords_roundtrip() {
        let g = GridSpec::<f64>::new(vec![3, 4, 5], 2.0, Topology::Box).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.index(&g.coords(i)), i);
        }
        assert_eq!(g.strides(), vec![20, 5, 1]);
    }

    #[test]
    fn torus_lag_wraps() {
        let t = GridSpec::<f64>::new(vec![10], 1.0, Topology::Torus).unwrap();
        assert!((t.lag(0, 0, 9) - 0.1).abs() < 1e-15);
        assert!((t.lag(0, 0, 5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::<f64>::new(vec![], 1.0, Topology::Box).is_err());
        assert!(GridSpec::<f64>::new(vec![1, 4], 1.0, Topology::Box).is_err());
        assert!(GridSpec::<f64>::new(vec![4; 4], 1.0, Topology::Box).is_err());
        assert!(GridSpec::<f64>::new(vec![4], 0.0, Topology::Box).is_err());
    }

    #[test]
    fn field_validates_length_and_finiteness() {
        let g = GridSpec::<f64>::unit_box(1, 3).unwrap();
        assert!(GridField::new(g.clone(), vec![0.0; 2]).is_err());
        assert!(GridField::new(g.clone(), vec![0.0, f64::NAN, 1.0]).is_err());
        assert!(GridField::new(g, vec![0.0; 3]).is_ok());
    }
}
