//! Full cubical complex on a grid and its level-set filtrations.
//!
//! A cell is a base grid point together with an axis mask; it spans the
//! points `base + sum_{a in mask} e_a` (wrapping on a torus). Cells are
//! numbered mask by mask in order of increasing dimension, and within a mask
//! row-major over the admissible base points. Mask 0 therefore numbers the
//! vertices exactly like the grid itself.

use super::filtered::{Cell, FilteredComplex, TimeAxis};
use crate::error::{input, Result};
use crate::field::{GridField, GridSpec};
use crate::Scalar;

#[derive(Debug, Clone)]
pub struct CubicalGrid {
    sizes: Vec<usize>,
    torus: bool,
    /// Masks in numbering order.
    masks: Vec<u8>,
    /// Per mask (in numbering order): base shape and first cell id.
    shapes: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    /// Position of each mask value in `masks`.
    slot: [usize; 8],
    total: usize,
}

impl CubicalGrid {
    pub fn new<S: Scalar>(spec: &GridSpec<S>) -> Result<Self> {
        if spec.is_torus() && spec.sizes().iter().any(|&n| n < 3) {
            return input("a cubical torus needs at least 3 points per axis");
        }
        Ok(Self::from_sizes(spec.sizes(), spec.is_torus()))
    }

    pub(crate) fn from_sizes(sizes: &[usize], torus: bool) -> Self {
        let dim = sizes.len();
        let mut masks: Vec<u8> = (0..(1u8 << dim)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut shapes = Vec::new();
        let mut offsets = Vec::new();
        let mut slot = [usize::MAX; 8];
        let mut total = 0;
        for (k, &m) in masks.iter().enumerate() {
            let shape: Vec<usize> = (0..dim)
                .map(|a| if m & (1 << a) != 0 && !torus { sizes[a] - 1 } else { sizes[a] })
                .collect();
            slot[m as usize] = k;
            offsets.push(total);
            total += shape.iter().product::<usize>();
            shapes.push(shape);
        }
        CubicalGrid { sizes: sizes.to_vec(), torus, masks, shapes, offsets, slot, total }
    }

    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    pub fn n_cells(&self) -> usize {
        self.total
    }

    pub fn n_vertices(&self) -> usize {
        self.sizes.iter().product()
    }

    /// Ids of cells of each dimension form the contiguous range returned here.
    pub fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        let start = self
            .masks
            .iter()
            .position(|m| m.count_ones() as usize == d)
            .map(|k| self.offsets[k])
            .unwrap_or(self.total);
        let end = self
            .masks
            .iter()
            .position(|m| m.count_ones() as usize > d)
            .map(|k| self.offsets[k])
            .unwrap_or(self.total);
        start..end
    }

    pub fn cell_dim(&self, id: usize) -> usize {
        self.decode(id).0.count_ones() as usize
    }

    fn slot_of(&self, id: usize) -> usize {
        match self.offsets.binary_search(&id) {
            Ok(k) => {
                // empty shapes share offsets; take the last mask starting here
                let mut k = k;
                while k + 1 < self.offsets.len() && self.offsets[k + 1] == id {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        }
    }

    /// `(mask, base coordinates)` of a cell id.
    pub fn decode(&self, id: usize) -> (u8, Vec<usize>) {
        let k = self.slot_of(id);
        let shape = &self.shapes[k];
        let mut rem = id - self.offsets[k];
        let mut base = vec![0; shape.len()];
        for a in (0..shape.len()).rev() {
            base[a] = rem % shape[a];
            rem /= shape[a];
        }
        (self.masks[k], base)
    }

    pub fn encode(&self, mask: u8, base: &[usize]) -> usize {
        let k = self.slot[mask as usize];
        let shape = &self.shapes[k];
        self.offsets[k] + base.iter().zip(shape).fold(0, |acc, (&b, &n)| acc * n + b)
    }

    fn step(&self, base: &[usize], axis: usize) -> Vec<usize> {
        let mut b = base.to_vec();
        b[axis] += 1;
        if self.torus {
            b[axis] %= self.sizes[axis];
        }
        b
    }

    /// The two faces of `id` perpendicular to its lowest spanned axis, or
    /// `None` for a vertex.
    pub fn split_faces(&self, id: usize) -> Option<(usize, usize)> {
        let (mask, base) = self.decode(id);
        if mask == 0 {
            return None;
        }
        let a = mask.trailing_zeros() as usize;
        let m = mask & !(1 << a);
        Some((self.encode(m, &base), self.encode(m, &self.step(&base, a))))
    }

    pub fn boundary(&self, id: usize) -> Vec<usize> {
        let (mask, base) = self.decode(id);
        let mut out = Vec::with_capacity(2 * mask.count_ones() as usize);
        for a in 0..self.dim() {
            if mask & (1 << a) != 0 {
                let m = mask & !(1 << a);
                out.push(self.encode(m, &base));
                out.push(self.encode(m, &self.step(&base, a)));
            }
        }
        out
    }

    /// Grid indices of the corners of a cell.
    pub fn vertices(&self, id: usize) -> Vec<usize> {
        let (mask, base) = self.decode(id);
        let axes: Vec<usize> = (0..self.dim()).filter(|&a| mask & (1 << a) != 0).collect();
        (0..(1usize << axes.len()))
            .map(|bits| {
                let mut p = base.clone();
                for (k, &a) in axes.iter().enumerate() {
                    if bits & (1 << k) != 0 {
                        p = self.step(&p, a);
                    }
                }
                self.encode(0, &p)
            })
            .collect()
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..self.total)
            .map(|id| Cell {
                id,
                dim: self.cell_dim(id),
                boundary: self.boundary(id),
                vertices: self.vertices(id),
            })
            .collect()
    }

    /// Calls `visit(id, f, g)` for every non-vertex cell in increasing id
    /// order, where `f` and `g` are its two faces perpendicular to its lowest
    /// spanned axis. Faces always precede the cell.
    fn for_each_split(&self, mut visit: impl FnMut(usize, usize, usize)) {
        let dim = self.dim();
        let mut c = vec![0usize; dim];
        for k in 1..self.masks.len() {
            let m = self.masks[k];
            let a = m.trailing_zeros() as usize;
            let k2 = self.slot[(m & !(1 << a)) as usize];
            let shape = &self.shapes[k];
            let shape2 = &self.shapes[k2];
            let mut strides2 = vec![1usize; dim];
            for i in (0..dim.saturating_sub(1)).rev() {
                strides2[i] = strides2[i + 1] * shape2[i + 1];
            }
            let count: usize = shape.iter().product();
            c.iter_mut().for_each(|x| *x = 0);
            for local in 0..count {
                let f_local: usize = c.iter().zip(&strides2).map(|(x, s)| x * s).sum();
                let up = if c[a] + 1 == self.sizes[a] { 0 } else { c[a] + 1 };
                let g_local = f_local + up * strides2[a] - c[a] * strides2[a];
                visit(self.offsets[k] + local, self.offsets[k2] + f_local, self.offsets[k2] + g_local);
                for i in (0..dim).rev() {
                    c[i] += 1;
                    if c[i] < shape[i] {
                        break;
                    }
                    c[i] = 0;
                }
            }
        }
    }

    /// Per-cell `(min, max)` of vertex values, computed face by face.
    pub fn vertex_extrema<S: Scalar>(&self, values: &[S]) -> (Vec<S>, Vec<S>) {
        assert_eq!(values.len(), self.n_vertices());
        let mut lo = vec![S::zero(); self.total];
        let mut hi = vec![S::zero(); self.total];
        lo[..values.len()].copy_from_slice(values);
        hi[..values.len()].copy_from_slice(values);
        self.for_each_split(|id, f, g| {
            lo[id] = lo[f].min(lo[g]);
            hi[id] = hi[f].max(hi[g]);
        });
        (lo, hi)
    }

    /// Per-cell `(min, max)` for integer vertex data.
    pub fn vertex_extrema_int(&self, values: &[i64]) -> (Vec<i64>, Vec<i64>) {
        assert_eq!(values.len(), self.n_vertices());
        let mut lo = vec![0; self.total];
        let mut hi = vec![0; self.total];
        lo[..values.len()].copy_from_slice(values);
        hi[..values.len()].copy_from_slice(values);
        self.for_each_split(|id, f, g| {
            lo[id] = lo[f].min(lo[g]);
            hi[id] = hi[f].max(hi[g]);
        });
        (lo, hi)
    }

    /// χ of the closed complex of cells whose corners all lie in `inside`.
    pub fn euler_char_of_vertex_set(&self, inside: &[bool]) -> i64 {
        assert_eq!(inside.len(), self.n_vertices());
        let mut present = vec![false; self.total];
        present[..inside.len()].copy_from_slice(inside);
        self.for_each_split(|id, f, g| present[id] = present[f] && present[g]);
        let mut chi = 0;
        for (k, m) in self.masks.iter().enumerate() {
            let range = self.offsets[k]..self.offsets[k] + self.shapes[k].iter().product::<usize>();
            let n = present[range].iter().filter(|&&p| p).count() as i64;
            chi += if m.count_ones() % 2 == 0 { n } else { -n };
        }
        chi
    }

    /// `(-1)^dim` for every cell id.
    pub fn signs(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.total);
        for (k, m) in self.masks.iter().enumerate() {
            let s = if m.count_ones() % 2 == 0 { 1 } else { -1 };
            let n: usize = self.shapes[k].iter().product();
            out.extend(std::iter::repeat_n(s, n));
        }
        out
    }

    /// Euler characteristic of the whole grid complex.
    pub fn euler_char(&self) -> i64 {
        self.signs().iter().sum()
    }
}

/// Lower-star filtration: each cell enters at the max of `f` over its corners,
/// so the complex at time `u` is the closed cubical model of `{f <= u}`.
pub fn sublevel_filtration<S: Scalar>(field: &GridField<S>) -> Result<FilteredComplex<S>> {
    let grid = CubicalGrid::new(field.spec())?;
    let (_, hi) = grid.vertex_extrema(field.values());
    Ok(FilteredComplex::new_trusted(grid.cells(), hi, TimeAxis::Sublevel))
}

/// Superlevel filtration of `f`, realized as the sublevel filtration of `-f`.
/// Reported levels are `u = -t`.
pub fn superlevel_filtration<S: Scalar>(field: &GridField<S>) -> Result<FilteredComplex<S>> {
    Ok(sublevel_filtration(&field.negated())?.with_time_axis(TimeAxis::SuperlevelNegated))
}
