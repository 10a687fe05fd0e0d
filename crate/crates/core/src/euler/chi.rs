use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::Cell;

/// Alternating cell count Σ (−1)^dim of a closed complex.
pub fn euler_char_closed<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> i64 {
    cells.into_iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
}

/// Numbers of open cells per dimension in a decomposition of a possibly
/// noncompact space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenCellComplex {
    pub counts: BTreeMap<usize, u64>,
}

impl OpenCellComplex {
    pub fn new(counts: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut oc = OpenCellComplex::default();
        for (d, n) in counts {
            *oc.counts.entry(d).or_insert(0) += n;
        }
        oc
    }

    /// Disjoint union; χ is additive under it.
    pub fn union(&self, other: &Self) -> Self {
        OpenCellComplex::new(self.counts.iter().chain(&other.counts).map(|(&d, &n)| (d, n)))
    }
}

/// Locally finite Euler characteristic Σ (−1)^dim · #open cells.
pub fn euler_char_lf(oc: &OpenCellComplex) -> i64 {
    oc.counts
        .iter()
        .map(|(&d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_variants() {
        let open = OpenCellComplex::new([(1, 1)]);
        let half_open = OpenCellComplex::new([(0, 1), (1, 1)]);
        let point = OpenCellComplex::new([(0, 1)]);
        assert_eq!(euler_char_lf(&open), -1);
        assert_eq!(euler_char_lf(&half_open), 0);
        assert_eq!(euler_char_lf(&half_open.union(&point)), 1);
        assert_eq!(euler_char_lf(&OpenCellComplex::default()), 0);
    }
}
