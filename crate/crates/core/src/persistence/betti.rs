//! Betti numbers of a static complex by Gaussian elimination over Z/2.

use std::collections::HashMap;

use super::barcode::BettiVector;
use crate::complex::{is_face_closed, Cell};
use crate::error::{input, Error, Result};

pub const BRUTE_FORCE_CAP: usize = 5000;

/// Rank over Z/2 of the columns, each a bitset of `words` u64 words.
fn rank_z2(mut cols: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    for mut c in cols.drain(..) {
        loop {
            let Some(top) = highest_bit(&c) else { break };
            match pivots.get(&top) {
                Some(p) => c.iter_mut().zip(p).for_each(|(x, y)| *x ^= y),
                None => {
                    pivots.insert(top, c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(c: &[u64]) -> Option<usize> {
    c.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// β_k = dim ker ∂_k − rank ∂_{k+1} for the subcomplex spanned by `ids`.
pub fn brute_force_betti(cells: &[Cell], ids: &[usize]) -> Result<BettiVector> {
    if ids.len() > BRUTE_FORCE_CAP {
        return Err(Error::Size { what: "cells", actual: ids.len(), cap: BRUTE_FORCE_CAP });
    }
    if !is_face_closed(cells, ids) {
        return input("cell set is not closed under faces");
    }
    let top = ids.iter().map(|&i| cells[i].dim).max();
    let Some(top) = top else {
        return Ok(BettiVector::default());
    };
    // row index of each cell within its dimension
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    let mut row = HashMap::new();
    for &i in ids {
        let d = cells[i].dim;
        row.insert(i, by_dim[d].len());
        by_dim[d].push(i);
    }
    let mut ranks = vec![0usize; top + 2];
    for d in 1..=top {
        let words = by_dim[d - 1].len().div_ceil(64).max(1);
        let cols: Vec<Vec<u64>> = by_dim[d]
            .iter()
            .map(|&i| {
                let mut c = vec![0u64; words];
                for f in &cells[i].boundary {
                    let r = row[f];
                    c[r / 64] ^= 1 << (r % 64);
                }
                c
            })
            .collect();
        ranks[d] = rank_z2(cols);
    }
    let betti = (0..=top).map(|d| by_dim[d].len() - ranks[d] - ranks[d + 1]).collect();
    Ok(BettiVector::new(betti))
}
