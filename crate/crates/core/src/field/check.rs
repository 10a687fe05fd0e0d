use super::covariance::CovarianceModel;
use super::grid::GridField;
use crate::error::{input, Result};
use crate::Scalar;

pub const MIN_FIELDS_FOR_CHECK: usize = 100;

/// Empirical covariance along `axis` at `steps` grid steps, pooled over all
/// valid point pairs of all fields. Mean is taken as known (zero).
pub fn empirical_covariance<S: Scalar>(fields: &[GridField<S>], axis: usize, steps: usize) -> S {
    let spec = fields[0].spec();
    let n = spec.sizes()[axis];
    let stride = spec.strides()[axis];
    let mut sum = S::zero();
    let mut count = 0usize;
    for f in fields {
        let v = f.values();
        for p in 0..v.len() {
            let c = (p / stride) % n;
            let q = if c + steps < n {
                p + steps * stride
            } else if spec.is_torus() {
                p + (c + steps - n) * stride - c * stride
            } else {
                continue;
            };
            sum += v[p] * v[q];
            count += 1;
        }
    }
    sum / S::of_usize(count.max(1))
}

/// Max absolute deviation between empirical and model covariance over the
/// lag set {0, h, 2h} along every axis.
pub fn empirical_cov_check<S: Scalar>(fields: &[GridField<S>], model: &CovarianceModel<S>) -> Result<S> {
    if fields.len() < MIN_FIELDS_FOR_CHECK {
        return input(format!(
            "need at least {MIN_FIELDS_FOR_CHECK} fields, got {}",
            fields.len()
        ));
    }
    let spec = fields[0].spec();
    if let Some(i) = fields.iter().position(|f| f.spec() != spec) {
        return input(format!("field {i} has a different grid than field 0"));
    }
    let mut worst = S::zero();
    for axis in 0..spec.dim() {
        for steps in 0..=2 {
            if steps >= spec.sizes()[axis] {
                continue;
            }
            let emp = empirical_covariance(fields, axis, steps);
            let lag = S::of_usize(steps) * spec.spacing(axis);
            worst = worst.max((emp - model.axis_factor(lag)).abs());
        }
    }
    Ok(worst)
}
