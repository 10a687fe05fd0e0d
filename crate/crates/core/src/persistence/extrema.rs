//! Grid scans for local extrema, the combinatorial counterparts of
//! superlevel birth and death times.

use crate::field::GridField;
use crate::Scalar;

fn axis_neighbours<S: Scalar>(field: &GridField<S>, v: usize) -> Vec<usize> {
    let spec = field.spec();
    let c = spec.coords(v);
    let mut out = Vec::with_capacity(2 * c.len());
    for (axis, &n) in spec.sizes().iter().enumerate() {
        for step in [-1i64, 1] {
            let x = c[axis] as i64 + step;
            let x = if spec.is_torus() {
                x.rem_euclid(n as i64)
            } else if x < 0 || x >= n as i64 {
                continue;
            } else {
                x
            };
            let mut d = c.clone();
            d[axis] = x as usize;
            out.push(spec.index(&d));
        }
    }
    out
}

/// Vertices sharing a top cell with `v`, or `None` when `v` lies on the
/// boundary of a box grid.
fn star_neighbours<S: Scalar>(field: &GridField<S>, v: usize) -> Option<Vec<usize>> {
    let spec = field.spec();
    let c = spec.coords(v);
    let n = c.len();
    if !spec.is_torus() && c.iter().zip(spec.sizes()).any(|(&x, &s)| x == 0 || x + 1 == s) {
        return None;
    }
    let mut out = Vec::with_capacity(3usize.pow(n as u32) - 1);
    for code in 0..3usize.pow(n as u32) {
        let mut d = c.clone();
        let mut k = code;
        let mut is_self = true;
        for (axis, &s) in spec.sizes().iter().enumerate() {
            let step = (k % 3) as i64 - 1;
            k /= 3;
            is_self &= step == 0;
            d[axis] = (c[axis] as i64 + step).rem_euclid(s as i64) as usize;
        }
        if !is_self {
            out.push(spec.index(&d));
        }
    }
    Some(out)
}

/// Vertices strictly above all 2N axis neighbours. Their values are the
/// births of positive-length superlevel H0 bars.
pub fn local_maxima<S: Scalar>(field: &GridField<S>) -> Vec<usize> {
    let f = field.values();
    (0..f.len())
        .filter(|&v| axis_neighbours(field, v).iter().all(|&w| f[v] > f[w]))
        .collect()
}

/// Interior vertices strictly below every vertex of their closed star (the
/// 3^N − 1 surrounding grid points). On a box grid their values are the
/// deaths of positive-length superlevel bars in degree N − 1; on a torus the
/// global minimum instead creates the top class.
pub fn star_minima<S: Scalar>(field: &GridField<S>) -> Vec<usize> {
    let f = field.values();
    (0..f.len())
        .filter(|&v| star_neighbours(field, v).is_some_and(|ns| ns.iter().all(|&w| f[v] < f[w])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridSpec;

    #[test]
    fn pit_and_peak() {
        let spec = GridSpec::<f64>::unit_box(2, 3).unwrap();
        let mut vals = vec![1.0; 9];
        vals[4] = 0.0;
        vals[0] = 2.0;
        let f = GridField::new(spec, vals).unwrap();
        assert_eq!(star_minima(&f), vec![4]);
        assert_eq!(local_maxima(&f), vec![0]);
    }

    #[test]
    fn boundary_minimum_is_not_interior() {
        let spec = GridSpec::<f64>::unit_box(1, 4).unwrap();
        let f = GridField::new(spec, vec![0.0, 1.0, 0.5, 2.0]).unwrap();
        assert_eq!(star_minima(&f), vec![2]);
        assert_eq!(local_maxima(&f), vec![1, 3]);
    }
}
