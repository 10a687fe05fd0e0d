//! Euler characteristic curves of closed cubical level sets.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::complex::CubicalGrid;
use crate::error::Result;
use crate::field::GridField;
use crate::scalar::cmp;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    /// χ{f >= u}
    Superlevel,
    /// χ{f <= u}
    Sublevel,
}

/// Integer step function of the level `u`.
///
/// With breakpoints `u_1 < ... < u_m`, a superlevel curve takes `values[0]`
/// for `u <= u_1`, `values[i]` on `(u_i, u_{i+1}]` and `values[m]` above
/// `u_m`. A sublevel curve takes `values[0]` below `u_1`, `values[i]` on
/// `[u_i, u_{i+1})` and `values[m]` from `u_m` on.
#[derive(Debug, Clone, PartialEq)]
pub struct ECCurve<S> {
    pub breakpoints: Vec<S>,
    pub values: Vec<i64>,
    pub kind: LevelKind,
}

impl<S: Scalar> ECCurve<S> {
    fn piece(&self, u: S) -> usize {
        match self.kind {
            LevelKind::Superlevel => self.breakpoints.partition_point(|&b| b < u),
            LevelKind::Sublevel => self.breakpoints.partition_point(|&b| b <= u),
        }
    }

    pub fn at(&self, u: S) -> i64 {
        self.values[self.piece(u)]
    }

    /// Exact ∫_a^b χ(u) du for finite `a <= b`.
    pub fn integrate(&self, a: S, b: S) -> S {
        debug_assert!(a <= b);
        let mut total = S::zero();
        let mut lo = a;
        let first = self.breakpoints.partition_point(|&x| x <= a);
        for &x in &self.breakpoints[first..] {
            if x >= b {
                break;
            }
            total += S::of(self.at(lo + (x - lo) * S::of(0.5)) as f64) * (x - lo);
            lo = x;
        }
        if b > lo {
            total += S::of(self.at(lo + (b - lo) * S::of(0.5)) as f64) * (b - lo);
        }
        total
    }

    /// `u,chi` rows, one per breakpoint, with χ evaluated at the breakpoint.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "u,chi")?;
        for &u in &self.breakpoints {
            writeln!(w, "{:.16e},{}", u.as_f64(), self.at(u))?;
        }
        Ok(())
    }
}

/// Builds the curve from per-cell keys: a cell is counted at `u` when its
/// key is >= u (superlevel) or <= u (sublevel).
fn sweep<S: Scalar>(keys: &[S], signs: &[i64], kind: LevelKind) -> ECCurve<S> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| cmp(&keys[a], &keys[b]));
    let mut breakpoints: Vec<S> = Vec::new();
    let mut jumps: Vec<i64> = Vec::new();
    for &i in &order {
        if breakpoints.last() != Some(&keys[i]) {
            breakpoints.push(keys[i]);
            jumps.push(0);
        }
        *jumps.last_mut().expect("pushed") += signs[i];
    }
    let total: i64 = jumps.iter().sum();
    let mut values = Vec::with_capacity(jumps.len() + 1);
    match kind {
        LevelKind::Sublevel => {
            let mut acc = 0;
            values.push(0);
            for j in &jumps {
                acc += j;
                values.push(acc);
            }
        }
        LevelKind::Superlevel => {
            let mut acc = total;
            values.push(acc);
            for j in &jumps {
                acc -= j;
                values.push(acc);
            }
        }
    }
    ECCurve { breakpoints, values, kind }
}

/// χ{f >= u}: a cell belongs to the closed superlevel complex iff its
/// smallest vertex value is >= u.
pub fn ec_curve_superlevel<S: Scalar>(field: &GridField<S>) -> Result<ECCurve<S>> {
    let grid = CubicalGrid::new(field.spec())?;
    let (lo, _) = grid.vertex_extrema(field.values());
    Ok(sweep(&lo, &grid.signs(), LevelKind::Superlevel))
}

/// χ{f <= u}: a cell belongs iff its largest vertex value is <= u.
pub fn ec_curve_sublevel<S: Scalar>(field: &GridField<S>) -> Result<ECCurve<S>> {
    let grid = CubicalGrid::new(field.spec())?;
    let (_, hi) = grid.vertex_extrema(field.values());
    Ok(sweep(&hi, &grid.signs(), LevelKind::Sublevel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridSpec;

    #[test]
    fn constant_field() {
        let f = GridField::constant(GridSpec::<f64>::unit_box(2, 5).unwrap(), 0.7).unwrap();
        let c = ec_curve_superlevel(&f).unwrap();
        assert_eq!(c.breakpoints, vec![0.7]);
        assert_eq!((c.at(-10.0), c.at(0.7), c.at(0.70001)), (1, 1, 0));
        let s = ec_curve_sublevel(&f).unwrap();
        assert_eq!((s.at(0.69), s.at(0.7)), (0, 1));
    }

    #[test]
    fn two_bumps_superlevel() {
        // 1D: [2, 0, 1] has two components above 0.5
        let f = GridField::new(GridSpec::<f64>::unit_box(1, 3).unwrap(), vec![2.0, 0.0, 1.0]).unwrap();
        let c = ec_curve_superlevel(&f).unwrap();
        assert_eq!((c.at(-1.0), c.at(0.5), c.at(1.5), c.at(3.0)), (1, 2, 1, 0));
        assert!((c.integrate(0.0, 3.0) - 3.0).abs() < 1e-15);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    }
}
