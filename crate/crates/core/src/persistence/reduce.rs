//! Z/2 boundary-matrix reduction with clearing.

use super::barcode::{Bar, Barcode};
use crate::complex::FilteredComplex;
use crate::error::{input, Result};
use crate::Scalar;

const NONE: usize = usize::MAX;

/// In-place symmetric difference of two sorted index lists.
fn add_into(target: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(target, scratch);
}

/// Pairs every cell with the cell that kills its class, or leaves it
/// unpaired (an essential class). Columns are processed one dimension at a
/// time from the top; a column whose index is already a pivot is cleared
/// without reduction.
pub fn reduce<S: Scalar>(fc: &FilteredComplex<S>) -> Result<Barcode<S>> {
    if let Some((face, cell)) = fc.first_monotonicity_violation() {
        return input(format!("face {face} enters after its coface {cell}"));
    }
    let order = fc.reduction_order();
    let n = order.len();
    if n > u32::MAX as usize {
        return Err(crate::Error::Size { what: "cells", actual: n, cap: u32::MAX as usize });
    }
    let mut pos = vec![0usize; n];
    for (p, &id) in order.iter().enumerate() {
        pos[id] = p;
    }
    let cells = fc.cells();
    let dims: Vec<usize> = order.iter().map(|&id| cells[id].dim).collect();
    let ent: Vec<S> = order.iter().map(|&id| fc.entrance()[id]).collect();
    let max_dim = fc.max_dim();

    // pivot_col[row] = column whose lowest entry is `row`
    let mut pivot_col = vec![NONE; n];
    let mut cleared = vec![false; n];
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut scratch = Vec::new();

    for d in (1..=max_dim).rev() {
        for j in (0..n).filter(|&j| dims[j] == d) {
            if cleared[j] {
                continue;
            }
            let mut col: Vec<u32> = cells[order[j]].boundary.iter().map(|&f| pos[f] as u32).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                let k = pivot_col[low as usize];
                if k == NONE {
                    break;
                }
                add_into(&mut col, &columns[k], &mut scratch);
            }
            if let Some(&low) = col.last() {
                pivot_col[low as usize] = j;
                cleared[low as usize] = true;
                columns[j] = col;
            }
        }
    }

    let mut bars = Vec::with_capacity(n);
    for (j, &d) in dims.iter().enumerate() {
        if let Some(&low) = columns[j].last() {
            bars.push(Bar::new(ent[low as usize], ent[j], d - 1));
        } else if !cleared[j] {
            bars.push(Bar::new(ent[j], S::infinity(), d));
        }
    }
    bars.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then(crate::scalar::cmp(&a.birth, &b.birth))
            .then(crate::scalar::cmp(&a.death, &b.death))
    });
    let mut bc = Barcode::new(bars, fc.time_axis(), fc.horizon());
    bc.max_dim = max_dim;
    Ok(bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Cell, TimeAxis};

    fn graph(n_vertices: usize, edges: &[(usize, usize)]) -> Vec<Cell> {
        let mut cells: Vec<Cell> =
            (0..n_vertices).map(|i| Cell { id: i, dim: 0, boundary: vec![], vertices: vec![i] }).collect();
        for &(a, b) in edges {
            let id = cells.len();
            cells.push(Cell { id, dim: 1, boundary: vec![a, b], vertices: vec![a, b] });
        }
        cells
    }

    #[test]
    fn single_vertex() {
        let fc = FilteredComplex::new(graph(1, &[]), vec![0.0], TimeAxis::Sublevel).unwrap();
        let bc = reduce(&fc).unwrap();
        assert_eq!(bc.bars(), &[Bar::new(0.0, f64::INFINITY, 0)]);
    }

    #[test]
    fn four_cycle() {
        let cells = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let fc = FilteredComplex::new(cells, vec![0.0; 8], TimeAxis::Sublevel).unwrap();
        let bc = reduce(&fc).unwrap();
        let nonzero: Vec<_> = bc.nonzero().copied().collect();
        assert_eq!(nonzero, vec![Bar::new(0.0, f64::INFINITY, 0), Bar::new(0.0, f64::INFINITY, 1)]);
        // every cell is a creator or a destroyer exactly once
        let paired = bc.bars().iter().filter(|b| !b.is_essential()).count();
        assert_eq!(2 * paired + (bc.len() - paired), 8);
    }

    #[test]
    fn merge_kills_younger_component() {
        let cells = graph(2, &[(0, 1)]);
        let fc = FilteredComplex::new(cells, vec![0.0, 1.0, 3.0], TimeAxis::Sublevel).unwrap();
        let bc = reduce(&fc).unwrap();
        assert_eq!(bc.bars(), &[Bar::new(0.0, f64::INFINITY, 0), Bar::new(1.0, 3.0, 0)]);
    }

    #[test]
    fn symmetric_difference() {
        let mut a = vec![1, 3, 5];
        let mut s = Vec::new();
        add_into(&mut a, &[2, 3, 6], &mut s);
        assert_eq!(a, vec![1, 2, 5, 6]);
    }
}
