//! Rips and Čech filtrations of point clouds, radius convention.
//!
//! A simplex enters the Rips filtration at half its largest pairwise distance
//! and the Čech filtration at the radius of its minimum enclosing ball, so
//! both time axes are ball radii.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::filtered::{Cell, FilteredComplex, TimeAxis};
use super::meb::min_enclosing_ball;
use crate::error::{input, Error, Result};
use crate::Scalar;

pub const DEFAULT_POINT_CAP: usize = 512;
const MAX_SIMPLEX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    L2,
    Linf,
}

impl Metric {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l2" => Ok(Metric::L2),
            "linf" => Ok(Metric::Linf),
            other => input(format!("unknown metric `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<S> {
    dim: usize,
    points: Vec<Vec<S>>,
    metric: Metric,
}

impl<S: Scalar> PointCloud<S> {
    pub fn new(points: Vec<Vec<S>>, metric: Metric) -> Result<Self> {
        let dim = match points.first() {
            Some(p) if !p.is_empty() => p.len(),
            Some(_) => return input("points must have at least one coordinate"),
            None => return input("a point cloud needs at least one point"),
        };
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return input(format!("point {i} has {} coordinates, expected {dim}", points[i].len()));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return input("point coordinates must be finite");
        }
        Ok(PointCloud { dim, points, metric })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_metric(&self, metric: Metric) -> Self {
        PointCloud { metric, ..self.clone() }
    }

    pub fn distance(&self, i: usize, j: usize) -> S {
        let (a, b) = (&self.points[i], &self.points[j]);
        match self.metric {
            Metric::L2 => a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<S>().sqrt(),
            Metric::Linf => a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).fold(S::zero(), S::max),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions<S> {
    pub maxdim: usize,
    /// Simplices entering later than this radius are left out.
    pub max_radius: Option<S>,
    pub point_cap: usize,
}

impl<S: Scalar> SimplexOptions<S> {
    pub fn new(maxdim: usize) -> Self {
        SimplexOptions { maxdim, max_radius: None, point_cap: DEFAULT_POINT_CAP }
    }

    pub fn with_max_radius(mut self, r: S) -> Self {
        self.max_radius = Some(r);
        self
    }
}

type Key = [u32; MAX_SIMPLEX_DIM + 1];

fn key(vs: &[usize]) -> Key {
    let mut k = [u32::MAX; MAX_SIMPLEX_DIM + 1];
    for (slot, &v) in k.iter_mut().zip(vs) {
        *slot = v as u32;
    }
    k
}

/// Vertex sets of all cliques of the `2 * max_radius` neighborhood graph
/// with at most `maxdim + 1` vertices, grouped by dimension.
fn enumerate_cliques<S: Scalar>(
    cloud: &PointCloud<S>,
    opts: &SimplexOptions<S>,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = cloud.len();
    if n > opts.point_cap {
        return Err(Error::Size { what: "points", actual: n, cap: opts.point_cap });
    }
    if opts.maxdim > MAX_SIMPLEX_DIM {
        return Err(Error::Unsupported(format!(
            "simplices above dimension {MAX_SIMPLEX_DIM}"
        )));
    }
    let reach = opts.max_radius.map(|r| r + r);
    let forward: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            ((i + 1)..n)
                .filter(|&j| reach.is_none_or(|r| cloud.distance(i, j) <= r))
                .collect()
        })
        .collect();
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); opts.maxdim + 1];
    by_dim[0] = (0..n).map(|i| vec![i]).collect();
    fn extend(
        simplex: &mut Vec<usize>,
        candidates: &[usize],
        forward: &[Vec<usize>],
        by_dim: &mut [Vec<Vec<usize>>],
    ) {
        for (k, &v) in candidates.iter().enumerate() {
            simplex.push(v);
            by_dim[simplex.len() - 1].push(simplex.clone());
            if simplex.len() < by_dim.len() {
                let next: Vec<usize> = candidates[k + 1..]
                    .iter()
                    .copied()
                    .filter(|w| forward[v].binary_search(w).is_ok())
                    .collect();
                extend(simplex, &next, forward, by_dim);
            }
            simplex.pop();
        }
    }
    if opts.maxdim >= 1 {
        for i in 0..n {
            let mut s = vec![i];
            extend(&mut s, &forward[i], &forward, &mut by_dim);
        }
    }
    for level in by_dim.iter_mut() {
        level.sort();
    }
    Ok(by_dim)
}

fn assemble<S: Scalar>(
    by_dim: Vec<Vec<Vec<usize>>>,
    entrance_of: impl Fn(&[usize]) -> S,
    max_radius: Option<S>,
) -> FilteredComplex<S> {
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut cells = Vec::new();
    let mut entrance = Vec::new();
    for level in by_dim {
        for vs in level {
            let e = entrance_of(&vs);
            if max_radius.is_some_and(|r| e > r) {
                continue;
            }
            let boundary: Vec<usize> = if vs.len() == 1 {
                Vec::new()
            } else {
                (0..vs.len())
                    .filter_map(|skip| {
                        let face: Vec<usize> =
                            vs.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                        ids.get(&key(&face)).copied()
                    })
                    .collect()
            };
            if boundary.len() != if vs.len() == 1 { 0 } else { vs.len() } {
                // a face was cut by the radius bound, so this simplex is too
                continue;
            }
            let id = cells.len();
            ids.insert(key(&vs), id);
            cells.push(Cell { id, dim: vs.len() - 1, boundary, vertices: vs });
            entrance.push(e);
        }
    }
    FilteredComplex::new_trusted(cells, entrance, TimeAxis::Scale)
}

/// Vietoris–Rips filtration: entrance = half the largest pairwise distance.
pub fn rips_filtration<S: Scalar>(cloud: &PointCloud<S>, opts: &SimplexOptions<S>) -> Result<FilteredComplex<S>> {
    let by_dim = enumerate_cliques(cloud, opts)?;
    let half = S::of(0.5);
    Ok(assemble(
        by_dim,
        |vs| {
            let mut m = S::zero();
            for (k, &a) in vs.iter().enumerate() {
                for &b in &vs[k + 1..] {
                    m = m.max(cloud.distance(a, b));
                }
            }
            m * half
        },
        opts.max_radius,
    ))
}

/// Čech filtration: entrance = radius of the smallest ball (in the cloud's
/// metric) containing the simplex's vertices.
pub fn cech_filtration<S: Scalar>(cloud: &PointCloud<S>, opts: &SimplexOptions<S>) -> Result<FilteredComplex<S>> {
    let by_dim = enumerate_cliques(cloud, opts)?;
    let half = S::of(0.5);
    let pts = cloud.points();
    Ok(assemble(
        by_dim,
        |vs| match cloud.metric() {
            Metric::L2 => {
                let refs: Vec<&[S]> = vs.iter().map(|&v| pts[v].as_slice()).collect();
                min_enclosing_ball(&refs).radius
            }
            // an L-infinity ball is a cube: the smallest one spans the
            // coordinate ranges
            Metric::Linf => (0..cloud.dim())
                .map(|d| {
                    let lo = vs.iter().map(|&v| pts[v][d]).fold(S::infinity(), S::min);
                    let hi = vs.iter().map(|&v| pts[v][d]).fold(S::neg_infinity(), S::max);
                    (hi - lo) * half
                })
                .fold(S::zero(), S::max),
        },
        opts.max_radius,
    ))
}
