//! Euler integrals of real-valued grid functions.
//!
//! With closed cubical level sets there are two natural integrals of a vertex
//! function `f`. The lower one sums `(−1)^dim · max f` over cells and equals
//! `∫_0^∞ [χ(M) − χ{f <= u}] du − ∫_0^∞ χ{f <= −u} du`; it is the integral the
//! Gaussian expectation formulas and the barcode identity refer to. The upper
//! one sums `(−1)^dim · min f` and equals
//! `∫_0^∞ χ{f >= u} du − ∫_0^∞ [χ(M) − χ{f >= −u}] du`.

use super::curve::{ec_curve_sublevel, ec_curve_superlevel, ECCurve};
use crate::complex::{sublevel_filtration, CubicalGrid};
use crate::error::{Error, Result};
use crate::field::GridField;
use crate::persistence::{barcode_euler_char, reduce};
use crate::Scalar;

fn signed_sum<S: Scalar>(keys: &[S], signs: &[i64]) -> S {
    keys.iter()
        .zip(signs)
        .map(|(&k, &s)| if s > 0 { k } else { -k })
        .sum()
}

/// Σ (−1)^dim · v(c) for a function given per cell of the grid complex.
pub fn euler_integral_cells<S: Scalar>(grid: &CubicalGrid, cell_values: &[S]) -> S {
    assert_eq!(cell_values.len(), grid.n_cells());
    signed_sum(cell_values, &grid.signs())
}

/// Lower Euler integral, accumulated cell by cell.
pub fn euler_integral_real<S: Scalar>(field: &GridField<S>) -> Result<S> {
    let grid = CubicalGrid::new(field.spec())?;
    let (_, hi) = grid.vertex_extrema(field.values());
    Ok(signed_sum(&hi, &grid.signs()))
}

/// Upper Euler integral, accumulated cell by cell.
pub fn euler_integral_upper<S: Scalar>(field: &GridField<S>) -> Result<S> {
    let grid = CubicalGrid::new(field.spec())?;
    let (lo, _) = grid.vertex_extrema(field.values());
    Ok(signed_sum(&lo, &grid.signs()))
}

/// Past this bound every level set is empty or everything.
fn reach<S: Scalar>(field: &GridField<S>) -> S {
    field.max().abs().max(field.min().abs()) + S::one()
}

fn chi_total<S: Scalar>(c: &ECCurve<S>) -> S {
    S::of(*c.values.last().expect("nonempty") as f64)
}

/// Lower Euler integral by stepwise integration of the sublevel EC curve.
pub fn euler_integral_real_stepwise<S: Scalar>(field: &GridField<S>) -> Result<S> {
    let c = ec_curve_sublevel(field)?;
    let b = reach(field);
    let chi_m = chi_total(&c);
    let pos = chi_m * b - c.integrate(S::zero(), b);
    let neg = c.integrate(-b, S::zero());
    Ok(pos - neg)
}

/// Upper Euler integral by stepwise integration of the superlevel EC curve.
pub fn euler_integral_upper_stepwise<S: Scalar>(field: &GridField<S>) -> Result<S> {
    let c = ec_curve_superlevel(field)?;
    let b = reach(field);
    let chi_m = S::of(c.values[0] as f64);
    let pos = c.integrate(S::zero(), b);
    let neg = chi_m * b - c.integrate(-b, S::zero());
    Ok(pos - neg)
}

fn agree<S: Scalar>(a: S, b: S, field: &GridField<S>, what: &str) -> Result<S> {
    let n = S::of_usize(field.values().len());
    let tol = S::of(64.0) * S::epsilon() * n * reach(field);
    if (a - b).abs() > tol {
        return Err(Error::Consistency(format!(
            "{what}: per-cell sum {a} and level sweep {b} differ by more than {tol}"
        )));
    }
    Ok(a)
}

/// Lower integral by both methods; errors if they disagree beyond rounding.
pub fn euler_integral_real_checked<S: Scalar>(field: &GridField<S>) -> Result<S> {
    agree(euler_integral_real(field)?, euler_integral_real_stepwise(field)?, field, "lower integral")
}

pub fn euler_integral_upper_checked<S: Scalar>(field: &GridField<S>) -> Result<S> {
    agree(euler_integral_upper(field)?, euler_integral_upper_stepwise(field)?, field, "upper integral")
}

/// Both sides of `χ(B(f, f_max)) = f_max·χ(M) − ∫ f dχ` computed
/// independently: the left from the sublevel barcode, the right from the
/// lower Euler integral.
pub fn barcode_identity_check<S: Scalar>(field: &GridField<S>) -> Result<(S, S)> {
    let fmax = field.max();
    let bc = reduce(&sublevel_filtration(field)?)?;
    let lhs = barcode_euler_char(&bc, fmax)?;
    let chi_m = CubicalGrid::new(field.spec())?.euler_char();
    let rhs = fmax * S::of(chi_m as f64) - euler_integral_real(field)?;
    Ok((lhs, rhs))
}
