//! Monte Carlo summaries: mean, standard error, closed form, z-score.

use std::io::Write;

use crate::config::ExperimentKind;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub quantity: String,
    pub param: String,
    pub mean: f64,
    /// Sample standard deviation over √runs.
    pub se: f64,
    pub runs: usize,
    pub closed_form: Option<f64>,
    pub z: Option<f64>,
    /// `None` for informational rows.
    pub pass: Option<bool>,
}

pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn z_score(mean: f64, se: f64, closed: f64) -> f64 {
    let diff = mean - closed;
    if se > 0.0 {
        diff / se
    } else if diff.abs() <= 1e-12 * (1.0 + closed.abs()) {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

impl SummaryRow {
    /// Sample statistics; with a closed form the row passes when |z| <= z_max.
    pub fn from_samples(
        quantity: &str,
        param: impl Into<String>,
        xs: &[f64],
        closed: Option<f64>,
        z_max: f64,
    ) -> Self {
        let (mean, se) = mean_se(xs);
        let z = closed.map(|c| z_score(mean, se, c));
        SummaryRow {
            quantity: quantity.into(),
            param: param.into(),
            mean,
            se,
            runs: xs.len(),
            closed_form: closed,
            z,
            pass: z.map(|z| z.abs() <= z_max),
        }
    }

    /// A deterministic assertion, e.g. an agreement rate or a maximum residual.
    pub fn assertion(quantity: &str, param: impl Into<String>, value: f64, runs: usize, pass: bool) -> Self {
        SummaryRow {
            quantity: quantity.into(),
            param: param.into(),
            mean: value,
            se: 0.0,
            runs,
            closed_form: None,
            z: None,
            pass: Some(pass),
        }
    }

    pub fn info(quantity: &str, param: impl Into<String>, xs: &[f64]) -> Self {
        Self::from_samples(quantity, param, xs, None, f64::INFINITY)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloSummary {
    pub experiment: ExperimentKind,
    pub rows: Vec<SummaryRow>,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl MonteCarloSummary {
    pub fn new(experiment: ExperimentKind) -> Self {
        MonteCarloSummary { experiment, rows: Vec::new() }
    }

    pub fn push(&mut self, row: SummaryRow) {
        self.rows.push(row);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &SummaryRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }

    pub fn row(&self, quantity: &str, param: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.quantity == quantity && r.param == param)
    }

    pub fn rows_of<'a>(&'a self, quantity: &'a str) -> impl Iterator<Item = &'a SummaryRow> {
        self.rows.iter().filter(move |r| r.quantity == quantity)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "quantity,param,mean,se,runs,closed_form,z,pass")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.quantity,
                r.param,
                r.mean,
                r.se,
                r.runs,
                opt(r.closed_form),
                opt(r.z),
                r.pass.map(|p| p.to_string()).unwrap_or_default()
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_error_uses_sample_deviation() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn z_and_pass() {
        let r = SummaryRow::from_samples("x", "", &[1.0, 2.0, 3.0, 4.0], Some(2.0), 3.0);
        assert!((r.z.unwrap() - 0.5 / r.se).abs() < 1e-12);
        assert_eq!(r.pass, Some(true));
        let r = SummaryRow::from_samples("x", "", &[5.0; 10], Some(5.0), 3.0);
        assert_eq!((r.z, r.pass), (Some(0.0), Some(true)));
        let r = SummaryRow::from_samples("x", "", &[5.0; 10], Some(4.0), 3.0);
        assert_eq!(r.pass, Some(false));
    }

    #[test]
    fn csv_layout() {
        let mut s = MonteCarloSummary::new(ExperimentKind::EcCurve);
        s.push(SummaryRow::assertion("residual", "max", 0.0, 3, true));
        s.push(SummaryRow::info("count", "", &[1.0, 1.0]));
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "quantity,param,mean,se,runs,closed_form,z,pass");
        assert_eq!(lines[1], "residual,max,0,0,3,,,true");
        assert_eq!(lines[2], "count,,1,0,2,,,");
        assert!(s.passed());
    }
}
