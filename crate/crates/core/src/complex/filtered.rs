use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::scalar::cmp;
use crate::Scalar;

/// One cell of a cubical or simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    /// Ids of the codimension-one faces.
    pub boundary: Vec<usize>,
    /// Grid-point or sample indices spanned by the cell.
    pub vertices: Vec<usize>,
}

/// Meaning of the time axis of a filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeAxis {
    /// Time is the field level `u` of a sublevel set `{f <= u}`.
    Sublevel,
    /// Time is `-u` for the superlevel set `{f >= u}`.
    SuperlevelNegated,
    /// Time is a ball radius.
    Scale,
}

/// Cells with entrance times that are monotone under the face relation.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex<S> {
    cells: Vec<Cell>,
    entrance: Vec<S>,
    axis: TimeAxis,
}

impl<S: Scalar> FilteredComplex<S> {
    /// Validates ids, boundaries and monotonicity of the entrance times.
    pub fn new(cells: Vec<Cell>, entrance: Vec<S>, axis: TimeAxis) -> Result<Self> {
        check_cells(&cells)?;
        if entrance.len() != cells.len() {
            return input(format!(
                "{} entrance times for {} cells",
                entrance.len(),
                cells.len()
            ));
        }
        if let Some(i) = entrance.iter().position(|e| !e.is_finite()) {
            return input(format!("entrance time of cell {i} is not finite"));
        }
        let fc = FilteredComplex { cells, entrance, axis };
        if let Some((face, cell)) = fc.first_monotonicity_violation() {
            return input(format!(
                "entrance time of face {face} ({}) exceeds that of cell {cell} ({})",
                fc.entrance[face], fc.entrance[cell]
            ));
        }
        Ok(fc)
    }

    pub(crate) fn new_trusted(cells: Vec<Cell>, entrance: Vec<S>, axis: TimeAxis) -> Self {
        debug_assert!(check_cells(&cells).is_ok());
        FilteredComplex { cells, entrance, axis }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn entrance(&self) -> &[S] {
        &self.entrance
    }

    pub fn time_axis(&self) -> TimeAxis {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Largest entrance time, or `-inf` for an empty complex.
    pub fn horizon(&self) -> S {
        self.entrance.iter().copied().fold(S::neg_infinity(), S::max)
    }

    pub fn first_monotonicity_violation(&self) -> Option<(usize, usize)> {
        self.cells.iter().find_map(|c| {
            c.boundary
                .iter()
                .find(|&&f| self.entrance[f] > self.entrance[c.id])
                .map(|&f| (f, c.id))
        })
    }

    /// Cell ids sorted by (entrance, dim, id). Every face precedes its cofaces.
    pub fn reduction_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by(|&a, &b| {
            cmp(&self.entrance[a], &self.entrance[b])
                .then(self.cells[a].dim.cmp(&self.cells[b].dim))
                .then(a.cmp(&b))
        });
        order
    }

    /// Replaces the time axis label, keeping the cells and times.
    pub fn with_time_axis(mut self, axis: TimeAxis) -> Self {
        self.axis = axis;
        self
    }
}

fn check_cells(cells: &[Cell]) -> Result<()> {
    for (i, c) in cells.iter().enumerate() {
        if c.id != i {
            return input(format!("cell at position {i} has id {}", c.id));
        }
        if c.dim == 0 && !c.boundary.is_empty() {
            return input(format!("vertex {i} has a nonempty boundary"));
        }
        for &f in &c.boundary {
            match cells.get(f) {
                Some(face) if face.dim + 1 == c.dim => {}
                Some(face) => {
                    return input(format!(
                        "cell {i} of dim {} lists face {f} of dim {}",
                        c.dim, face.dim
                    ))
                }
                None => return input(format!("cell {i} lists unknown face {f}")),
            }
        }
    }
    Ok(())
}

/// True when every (d-2)-cell appears an even number of times among the
/// faces of faces of each d-cell, i.e. the boundary squares to zero over Z/2.
pub fn boundary_squares_to_zero(cells: &[Cell]) -> bool {
    let mut counts = std::collections::HashMap::new();
    cells.iter().all(|c| {
        counts.clear();
        for &f in &c.boundary {
            for &g in &cells[f].boundary {
                *counts.entry(g).or_insert(0usize) += 1;
            }
        }
        counts.values().all(|k| k % 2 == 0)
    })
}

/// Ids of the cells present at time `t`: `{cells : entrance <= t}`.
pub fn complex_at<S: Scalar>(fc: &FilteredComplex<S>, t: S) -> Vec<usize> {
    (0..fc.len()).filter(|&i| fc.entrance[i] <= t).collect()
}

/// True when every face of every listed cell is also listed.
pub fn is_face_closed(cells: &[Cell], ids: &[usize]) -> bool {
    let mut present = vec![false; cells.len()];
    for &i in ids {
        present[i] = true;
    }
    ids.iter().all(|&i| cells[i].boundary.iter().all(|&f| present[f]))
}

/// Smallest entrance-time field dominating `raw`: each cell enters at the
/// max of `raw` over all of its faces, itself included.
pub fn monotone_completion<S: Scalar>(raw: &[S], cells: Vec<Cell>, axis: TimeAxis) -> Result<FilteredComplex<S>> {
    check_cells(&cells)?;
    if raw.len() != cells.len() {
        return input(format!("{} raw values for {} cells", raw.len(), cells.len()));
    }
    if let Some(i) = raw.iter().position(|e| !e.is_finite()) {
        return input(format!("raw value of cell {i} is not finite"));
    }
    let mut by_dim: Vec<usize> = (0..cells.len()).collect();
    by_dim.sort_by_key(|&i| cells[i].dim);
    let mut ent = raw.to_vec();
    for i in by_dim {
        let m = cells[i].boundary.iter().fold(ent[i], |m, &f| m.max(ent[f]));
        ent[i] = m;
    }
    Ok(FilteredComplex::new_trusted(cells, ent, axis))
}
