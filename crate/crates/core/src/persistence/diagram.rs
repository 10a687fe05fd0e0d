use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::barcode::{Bar, Barcode};
use crate::complex::TimeAxis;
use crate::error::{input, Result};
use crate::Scalar;

/// Default histogram bin width for birth/death marginals, in field units.
pub const DEFAULT_BIN_WIDTH: f64 = 0.1;

/// A diagram point in the units of the source: field levels for cubical
/// filtrations (superlevel points have `birth > death`), radii otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint<S> {
    pub birth: S,
    /// `+inf` (or `-inf` for superlevel diagrams) when essential.
    pub death: S,
    pub degree: usize,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<S> {
    pub points: Vec<DiagramPoint<S>>,
    pub axis: TimeAxis,
}

#[derive(Debug, Clone, Copy)]
pub struct DiagramOptions {
    pub include_zero_length: bool,
    pub include_essential: bool,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        DiagramOptions { include_zero_length: false, include_essential: true }
    }
}

fn to_level<S: Scalar>(axis: TimeAxis, t: S) -> S {
    match axis {
        TimeAxis::SuperlevelNegated => -t,
        _ => t,
    }
}

/// Diagram of the positive-length bars, essential bars flagged.
pub fn diagram<S: Scalar>(bc: &Barcode<S>) -> PersistenceDiagram<S> {
    diagram_with(bc, DiagramOptions::default())
}

pub fn diagram_with<S: Scalar>(bc: &Barcode<S>, opts: DiagramOptions) -> PersistenceDiagram<S> {
    let axis = bc.time_axis();
    let points = bc
        .bars()
        .iter()
        .filter(|b| opts.include_zero_length || b.birth < b.death)
        .filter(|b| opts.include_essential || !b.is_essential())
        .map(|b| DiagramPoint {
            birth: to_level(axis, b.birth),
            death: to_level(axis, b.death),
            degree: b.degree,
            essential: b.is_essential(),
        })
        .collect();
    PersistenceDiagram { points, axis }
}

impl<S: Scalar> PersistenceDiagram<S> {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn in_degree(&self, k: usize) -> impl Iterator<Item = &DiagramPoint<S>> {
        self.points.iter().filter(move |p| p.degree == k)
    }

    /// Inverse of [`diagram`]: the bars back in filtration time.
    pub fn to_bars(&self) -> Vec<Bar<S>> {
        self.points
            .iter()
            .map(|p| Bar::new(to_level(self.axis, p.birth), to_level(self.axis, p.death), p.degree))
            .collect()
    }
}

/// Counts in bins `[k w, (k+1) w)` keyed by `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: BTreeMap<i64, usize>,
}

impl Histogram {
    pub fn new(bin_width: f64) -> Result<Self> {
        if !(bin_width > 0.0 && bin_width.is_finite()) {
            return input(format!("bin width must be positive, got {bin_width}"));
        }
        Ok(Histogram { bin_width, counts: BTreeMap::new() })
    }

    pub fn add(&mut self, x: f64) {
        let k = (x / self.bin_width).floor() as i64;
        *self.counts.entry(k).or_insert(0) += 1;
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// `(bin_start, count)` pairs in increasing order.
    pub fn bins(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k as f64 * self.bin_width, c))
    }
}

/// Pooled histograms of births and of finite deaths in degree `k`.
pub fn birth_death_marginals<S: Scalar>(
    diagrams: &[PersistenceDiagram<S>],
    k: usize,
    bin_width: f64,
) -> Result<(Histogram, Histogram)> {
    if diagrams.is_empty() {
        return input("marginals need at least one diagram");
    }
    let mut births = Histogram::new(bin_width)?;
    let mut deaths = Histogram::new(bin_width)?;
    for p in diagrams.iter().flat_map(|d| d.in_degree(k)) {
        births.add(p.birth.as_f64());
        if !p.essential {
            deaths.add(p.death.as_f64());
        }
    }
    Ok((births, deaths))
}
