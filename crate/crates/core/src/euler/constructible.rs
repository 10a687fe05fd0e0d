//! Integer-valued functions, target supports and target counting.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::complex::CubicalGrid;
use crate::error::{input, Error, Result};
use crate::field::{GridSpec, Topology};
use crate::Scalar;

/// Integer vertex data on a grid. Level sets are closed cubical complexes:
/// `{h >= s}` keeps cells whose vertices all have `h >= s`, `{h <= -s}`
/// cells whose vertices all have `h <= -s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructibleField<S> {
    spec: GridSpec<S>,
    values: Vec<i64>,
}

impl<S: Scalar> ConstructibleField<S> {
    pub fn new(spec: GridSpec<S>, values: Vec<i64>) -> Result<Self> {
        if values.len() != spec.len() {
            return input(format!("{} values for a grid of {} points", values.len(), spec.len()));
        }
        Ok(ConstructibleField { spec, values })
    }

    pub fn spec(&self) -> &GridSpec<S> {
        &self.spec
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Σ_{s>=1} χ{h >= s} − Σ_{s>=1} χ{h <= −s}.
pub fn euler_integral_constructible<S: Scalar>(h: &ConstructibleField<S>) -> Result<i64> {
    let grid = CubicalGrid::new(&h.spec)?;
    let (lo, hi) = grid.vertex_extrema_int(&h.values);
    let signs = grid.signs();
    // χ of each level set from a histogram of the per-cell keys
    let mut up: BTreeMap<i64, i64> = BTreeMap::new();
    let mut down: BTreeMap<i64, i64> = BTreeMap::new();
    for c in 0..signs.len() {
        if lo[c] >= 1 {
            *up.entry(lo[c]).or_insert(0) += signs[c];
        }
        if hi[c] <= -1 {
            *down.entry(-hi[c]).or_insert(0) += signs[c];
        }
    }
    let levels = |m: &BTreeMap<i64, i64>| -> i64 {
        let top = m.keys().next_back().copied().unwrap_or(0);
        (1..=top).map(|s| m.range(s..).map(|(_, &v)| v).sum::<i64>()).sum()
    };
    Ok(levels(&up) - levels(&down))
}

/// Axis-aligned box or Euclidean disc (ball) in physical coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Rect { lo: Vec<f64>, hi: Vec<f64> },
    Disc { center: Vec<f64>, radius: f64 },
}

impl Shape {
    pub fn contains(&self, p: &[f64]) -> bool {
        const EPS: f64 = 1e-12;
        match self {
            Shape::Rect { lo, hi } => p.iter().zip(lo.iter().zip(hi)).all(|(&x, (&a, &b))| x >= a - EPS && x <= b + EPS),
            Shape::Disc { center, radius } => {
                p.iter().zip(center).map(|(&x, &c)| (x - c) * (x - c)).sum::<f64>() <= radius * radius + EPS
            }
        }
    }
}

/// Face-closed target supports on the cubical complex of a grid.
#[derive(Debug, Clone)]
pub struct TargetScene<S> {
    domain: GridSpec<S>,
    supports: Vec<Vec<usize>>,
    gamma: i64,
}

fn support_chi(grid: &CubicalGrid, ids: &[usize]) -> i64 {
    ids.iter().map(|&c| if grid.cell_dim(c) % 2 == 0 { 1 } else { -1 }).sum()
}

impl<S: Scalar> TargetScene<S> {
    /// Checks that every support is face-closed with χ = gamma.
    pub fn new(domain: GridSpec<S>, supports: Vec<Vec<usize>>, gamma: i64) -> Result<Self> {
        if gamma == 0 {
            return input("target Euler characteristic gamma must be nonzero");
        }
        let grid = CubicalGrid::new(&domain)?;
        for (k, s) in supports.iter().enumerate() {
            let mut present = vec![false; grid.n_cells()];
            for &c in s {
                if c >= grid.n_cells() {
                    return input(format!("support {k} lists unknown cell {c}"));
                }
                present[c] = true;
            }
            if s.iter().any(|&c| grid.boundary(c).iter().any(|&f| !present[f])) {
                return input(format!("support {k} is not closed under faces"));
            }
            let chi = support_chi(&grid, s);
            if chi != gamma {
                return input(format!("support {k} has Euler characteristic {chi}, expected {gamma}"));
            }
        }
        Ok(TargetScene { domain, supports, gamma })
    }

    /// Rasterizes each shape to the cells whose vertices all lie inside it.
    pub fn from_shapes(domain: GridSpec<S>, shapes: &[Shape], gamma: i64) -> Result<Self> {
        let supports = shapes.iter().map(|s| rasterize(&domain, s)).collect::<Result<Vec<_>>>()?;
        Self::new(domain, supports, gamma)
    }

    pub fn domain(&self) -> &GridSpec<S> {
        &self.domain
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    pub fn gamma(&self) -> i64 {
        self.gamma
    }

    /// `h(c)` = number of supports containing cell `c`.
    pub fn cell_counts(&self) -> Result<Vec<i64>> {
        let grid = CubicalGrid::new(&self.domain)?;
        let mut h = vec![0i64; grid.n_cells()];
        for s in &self.supports {
            for &c in s {
                h[c] += 1;
            }
        }
        Ok(h)
    }
}

pub fn rasterize<S: Scalar>(domain: &GridSpec<S>, shape: &Shape) -> Result<Vec<usize>> {
    let dim = domain.dim();
    let dims_ok = match shape {
        Shape::Rect { lo, hi } => lo.len() == dim && hi.len() == dim,
        Shape::Disc { center, .. } => center.len() == dim,
    };
    if !dims_ok {
        return input(format!("shape dimension does not match the {dim}-dimensional grid"));
    }
    let grid = CubicalGrid::new(domain)?;
    let inside: Vec<bool> = (0..domain.len())
        .map(|v| {
            let c = domain.coords(v);
            let p: Vec<f64> = (0..dim).map(|a| domain.position(a, c[a]).as_f64()).collect();
            shape.contains(&p)
        })
        .collect();
    Ok((0..grid.n_cells())
        .filter(|&c| grid.vertices(c).iter().all(|&v| inside[v]))
        .collect())
}

/// Number of targets as (1/γ) Σ_c (−1)^dim h(c). Since every support is a
/// closed complex with χ = γ and the level sets of `h` are closed, the sum
/// equals Σ_{s>=1} χ{h >= s}.
pub fn count_targets<S: Scalar>(scene: &TargetScene<S>) -> Result<i64> {
    let grid = CubicalGrid::new(&scene.domain)?;
    let h = scene.cell_counts()?;
    let total: i64 = h.iter().zip(grid.signs()).map(|(&x, s)| x * s).sum();
    if total % scene.gamma != 0 {
        return Err(Error::Consistency(format!(
            "Euler integral {total} is not a multiple of gamma = {}",
            scene.gamma
        )));
    }
    Ok(total / scene.gamma)
}

/// JSON scene description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneFile {
    pub sizes: Vec<usize>,
    pub side: f64,
    pub topology: Topology,
    pub gamma: i64,
    pub shapes: Vec<Shape>,
}

impl SceneFile {
    pub fn read<R: Read>(r: R) -> Result<Self> {
        Ok(serde_json::from_reader(r)?)
    }

    pub fn write<W: Write>(&self, w: W) -> Result<()> {
        Ok(serde_json::to_writer_pretty(w, self)?)
    }

    pub fn to_scene<S: Scalar>(&self) -> Result<TargetScene<S>> {
        let spec = GridSpec::new(self.sizes.clone(), S::of(self.side), self.topology)?;
        TargetScene::from_shapes(spec, &self.shapes, self.gamma)
    }
}
