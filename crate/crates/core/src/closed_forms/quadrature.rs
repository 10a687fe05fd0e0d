//! Integrals against the standard normal density.

use serde::{Deserialize, Serialize};

use super::hermite::normal_pdf;
use crate::error::{Error, Result};

/// Integration range; the normal mass beyond it is below 1e-31.
pub const TRUNCATION: f64 = 12.0;
const MAX_DOUBLINGS: u32 = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    /// Gauss–Hermite with `nodes` points, checked against `nodes + 8`.
    GaussHermite,
    /// Composite Simpson on `[-12, 12]`, split at breakpoints, panels
    /// doubled until successive estimates agree.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadratureRule,
    pub nodes: usize,
    pub tolerance: f64,
    /// Points where the integrand may have kinks or jumps.
    pub breakpoints: Vec<f64>,
}

impl QuadratureSpec {
    pub fn gauss_hermite(nodes: usize) -> Self {
        QuadratureSpec { rule: QuadratureRule::GaussHermite, nodes, tolerance: 1e-9, breakpoints: vec![] }
    }

    pub fn adaptive() -> Self {
        QuadratureSpec { rule: QuadratureRule::Adaptive, nodes: 64, tolerance: 1e-9, breakpoints: vec![] }
    }

    pub fn with_breakpoints(mut self, b: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(b);
        self
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::adaptive()
    }
}

/// Nodes and weights for ∫ g(x) φ(x) dx, from the Hermite weight e^{-t^2}
/// rule by x = √2 t. Newton iteration on the orthonormal recurrence.
pub fn gauss_hermite_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    let s2 = std::f64::consts::SQRT_2;
    let spi = std::f64::consts::PI.sqrt();
    let nodes = x.iter().rev().map(|&t| t * s2).collect();
    let weights = w.iter().rev().map(|&v| v / spi).collect();
    (nodes, weights)
}

fn gh_sum(g: &dyn Fn(f64) -> f64, n: usize) -> f64 {
    let (x, w) = gauss_hermite_rule(n);
    x.iter().zip(&w).map(|(&xi, &wi)| wi * g(xi)).sum()
}

fn simpson(h: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let step = (b - a) / panels as f64;
    let mut s = h(a) + h(b);
    for k in 1..panels {
        let x = a + k as f64 * step;
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * h(x);
    }
    s * step / 3.0
}

/// ∫ g(x) φ(x) dx.
pub fn gaussian_expectation(g: &dyn Fn(f64) -> f64, q: &QuadratureSpec) -> Result<f64> {
    match q.rule {
        QuadratureRule::GaussHermite => {
            let a = gh_sum(g, q.nodes);
            let b = gh_sum(g, q.nodes + 8);
            if (a - b).abs() > q.tolerance * b.abs().max(1.0) {
                return Err(Error::Numeric(format!(
                    "Gauss–Hermite estimates with {} and {} nodes differ by {:e}",
                    q.nodes,
                    q.nodes + 8,
                    (a - b).abs()
                )));
            }
            Ok(b)
        }
        QuadratureRule::Adaptive => {
            let mut cuts: Vec<f64> = q
                .breakpoints
                .iter()
                .copied()
                .filter(|b| b.abs() < TRUNCATION)
                .collect();
            cuts.push(-TRUNCATION);
            cuts.push(TRUNCATION);
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let h = |x: f64| g(x) * normal_pdf(x);
            let mut total = 0.0;
            for seg in cuts.windows(2) {
                let (a, b) = (seg[0], seg[1]);
                // the one-sided limits at a breakpoint are approached from inside
                let nudge = 1e-13 * (b - a);
                let (a, b) = (a + nudge, b - nudge);
                let mut panels = 64;
                let mut prev = simpson(&h, a, b, panels);
                let mut converged = false;
                for _ in 0..MAX_DOUBLINGS {
                    panels *= 2;
                    let cur = simpson(&h, a, b, panels);
                    let diff = (cur - prev).abs();
                    prev = cur;
                    if diff < q.tolerance * 0.1 {
                        converged = true;
                        break;
                    }
                }
                if !converged {
                    return Err(Error::Numeric(format!("Simpson refinement on [{a}, {b}] did not converge")));
                }
                total += prev;
            }
            Ok(total)
        }
    }
}

/// ⟨a, b⟩ = ∫ a(x) b(x) φ(x) dx.
pub fn gaussian_inner_product(
    a: &dyn Fn(f64) -> f64,
    b: &dyn Fn(f64) -> f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    gaussian_expectation(&|x| a(x) * b(x), q)
}
