//! Minimum enclosing ball of a small point set (Welzl's recursion).

use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball<S> {
    pub center: Vec<S>,
    pub radius: S,
}

fn dist<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<S>().sqrt()
}

fn contains<S: Scalar>(ball: &Ball<S>, p: &[S]) -> bool {
    let tol = S::of(1e-12) * (S::one() + ball.radius);
    dist(&ball.center, p) <= ball.radius + tol
}

/// Smallest ball through all points of `support`, centered in their affine
/// hull. `None` when the points are affinely dependent.
pub fn circumball<S: Scalar>(support: &[&[S]]) -> Option<Ball<S>> {
    let p0 = *support.first()?;
    let k = support.len() - 1;
    if k == 0 {
        return Some(Ball { center: p0.to_vec(), radius: S::zero() });
    }
    let v: Vec<Vec<S>> = support[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(&a, &b)| a - b).collect())
        .collect();
    let dot = |a: &[S], b: &[S]| a.iter().zip(b).map(|(&x, &y)| x * y).sum::<S>();
    // Gram system G lambda = |v_i|^2 / 2
    let mut a: Vec<Vec<S>> = (0..k)
        .map(|i| {
            let mut row: Vec<S> = (0..k).map(|j| dot(&v[i], &v[j])).collect();
            row.push(dot(&v[i], &v[i]) / S::of(2.0));
            row
        })
        .collect();
    let scale = (0..k).map(|i| a[i][i]).fold(S::zero(), S::max);
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| crate::scalar::cmp(&a[i][col].abs(), &a[j][col].abs()))?;
        if a[piv][col].abs() <= S::of(1e-12) * scale {
            return None;
        }
        a.swap(col, piv);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=k {
                    let t = a[col][c];
                    a[r][c] -= f * t;
                }
            }
        }
    }
    let lambda: Vec<S> = (0..k).map(|i| a[i][k] / a[i][i]).collect();
    let center: Vec<S> = (0..p0.len())
        .map(|d| p0[d] + (0..k).map(|i| lambda[i] * v[i][d]).sum::<S>())
        .collect();
    let radius = support.iter().map(|p| dist(&center, p)).fold(S::zero(), S::max);
    Some(Ball { center, radius })
}

fn welzl<S: Scalar>(pending: &[usize], boundary: &mut Vec<usize>, all: &[&[S]], dim: usize) -> Ball<S> {
    if pending.is_empty() || boundary.len() == dim + 1 {
        return boundary_ball(boundary, all);
    }
    let (&last, rest) = pending.split_last().expect("nonempty");
    let ball = welzl(rest, boundary, all, dim);
    if contains(&ball, all[last]) {
        return ball;
    }
    boundary.push(last);
    let b = welzl(rest, boundary, all, dim);
    boundary.pop();
    b
}

fn boundary_ball<S: Scalar>(boundary: &[usize], all: &[&[S]]) -> Ball<S> {
    if boundary.is_empty() {
        return Ball { center: vec![S::zero(); all[0].len()], radius: -S::one() };
    }
    let pts: Vec<&[S]> = boundary.iter().map(|&i| all[i]).collect();
    circumball(&pts).unwrap_or_else(|| {
        // affinely dependent support: the diametral ball of the farthest pair
        let mut best = (0, 0, S::zero());
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = dist(pts[i], pts[j]);
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        let center = pts[best.0]
            .iter()
            .zip(pts[best.1])
            .map(|(&a, &b)| (a + b) / S::of(2.0))
            .collect();
        Ball { center, radius: best.2 / S::of(2.0) }
    })
}

/// Exact minimum enclosing ball under the Euclidean metric.
pub fn min_enclosing_ball<S: Scalar>(points: &[&[S]]) -> Ball<S> {
    assert!(!points.is_empty(), "minimum enclosing ball of no points");
    let dim = points[0].len();
    let mut boundary = Vec::with_capacity(dim + 1);
    let idx: Vec<usize> = (0..points.len()).collect();
    welzl(&idx, &mut boundary, points, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: nested ternary search on the convex function
    /// `c -> max_i |c - p_i|` over the bounding box.
    fn ternary_radius(pts: &[[f64; 2]]) -> f64 {
        let f = |x: f64, y: f64| pts.iter().map(|p| ((p[0] - x).powi(2) + (p[1] - y).powi(2)).sqrt()).fold(0.0, f64::max);
        let (mut lx, mut hx) = (-10.0, 10.0);
        let inner = |x: f64| {
            let (mut ly, mut hy) = (-10.0, 10.0);
            for _ in 0..200 {
                let (m1, m2) = (ly + (hy - ly) / 3.0, hy - (hy - ly) / 3.0);
                if f(x, m1) < f(x, m2) { hy = m2 } else { ly = m1 }
            }
            f(x, (ly + hy) / 2.0)
        };
        for _ in 0..200 {
            let (m1, m2) = (lx + (hx - lx) / 3.0, hx - (hx - lx) / 3.0);
            if inner(m1) < inner(m2) { hx = m2 } else { lx = m1 }
        }
        inner((lx + hx) / 2.0)
    }

    #[test]
    fn equilateral_triangle() {
        let s = 1.7;
        let pts = [[0.0, 0.0], [s, 0.0], [s / 2.0, s * 3f64.sqrt() / 2.0]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        let b = min_enclosing_ball(&refs);
        assert!((b.radius - s / 3f64.sqrt()).abs() < 1e-12);
        assert!((ternary_radius(&pts) - s / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let pts = [[0.0, 0.0], [4.0, 0.0], [2.0, 0.5]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        assert!((min_enclosing_ball(&refs).radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn matches_ternary_oracle_on_random_sets() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..50 {
            let n = 1 + (next().abs() * 2.0) as usize;
            let pts: Vec<[f64; 2]> = (0..n.min(4)).map(|_| [next(), next()]).collect();
            let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
            let b = min_enclosing_ball(&refs);
            let oracle = ternary_radius(&pts);
            assert!((b.radius - oracle).abs() < 1e-7, "{pts:?}: {} vs {oracle}", b.radius);
            for p in &refs {
                assert!(contains(&b, p));
            }
        }
    }

    #[test]
    fn regular_tetrahedron() {
        let pts = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        assert!((min_enclosing_ball(&refs).radius - 3f64.sqrt()).abs() < 1e-12);
    }
}
