//! Experiments on sampled Gaussian fields: EC curves, Euler integrals, the
//! barcode Euler characteristic and pooled persistence diagrams.

use tdalab_core::closed_forms::{
    expected_barcode_ec, expected_ec_excursion, expected_euler_integral, normal_sf, LKVector, QuadratureSpec,
};
use tdalab_core::complex::{sublevel_filtration, superlevel_filtration};
use tdalab_core::euler::{ec_curve_superlevel, euler_integral_real, euler_integral_real_checked};
use tdalab_core::field::{FieldSampler, GridField, SamplerConfig};
use tdalab_core::persistence::{
    barcode_euler_char, birth_death_marginals, diagram, local_maxima, reduce, star_minima, PersistenceDiagram,
};
use tdalab_core::persistence::export::{barcode_svg, diagram_svg, write_diagram_csv};

use super::{
    chi_of_domain, expect_kind, lk_for, output_file, param, transform_spec, write_summary, write_text,
};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::Result;
use crate::plot::{line_chart, Series};
use crate::seeds::realizations;
use crate::summary::{MonteCarloSummary, SummaryRow};
use std::io::Write;

struct FieldContext {
    sampler: FieldSampler<f64>,
    lk: LKVector<f64>,
    chi_m: i64,
}

impl FieldContext {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let spec = cfg.grid()?;
        let sampler = FieldSampler::new(&spec, &cfg.model()?, &SamplerConfig::default())?;
        Ok(FieldContext { sampler, lk: lk_for(cfg)?, chi_m: chi_of_domain(cfg)? })
    }
}

fn fraction_at_or_above(f: &GridField<f64>, u: f64) -> f64 {
    let v = f.values();
    v.iter().filter(|&&x| x >= u).count() as f64 / v.len() as f64
}

pub fn run_ec_curve_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::EcCurve)?;
    let ctx = FieldContext::new(cfg)?;
    let volume = cfg.side.powi(cfg.dim as i32);
    let per_run = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let f = ctx.sampler.sample(seed);
        let curve = ec_curve_superlevel(&f)?;
        let chi: Vec<f64> = cfg.levels.iter().map(|&u| curve.at(u) as f64).collect();
        // Each vertex exceeds u with probability 1 − Φ(u), so the vertex
        // fraction is an unbiased volume estimate.
        let vol: Vec<f64> = cfg.levels.iter().map(|&u| volume * fraction_at_or_above(&f, u)).collect();
        Ok((chi, vol))
    })?;

    let mut s = MonteCarloSummary::new(cfg.experiment);
    let column = |k: usize, vol: bool| -> Vec<f64> {
        per_run.iter().map(|(c, v)| if vol { v[k] } else { c[k] }).collect()
    };
    for (k, &u) in cfg.levels.iter().enumerate() {
        let closed = expected_ec_excursion(u, &ctx.lk);
        s.push(SummaryRow::from_samples("ec", param(u), &column(k, false), Some(closed), cfg.z_max));
    }
    for (k, &u) in cfg.levels.iter().enumerate() {
        let closed = volume * normal_sf(u);
        s.push(SummaryRow::from_samples("volume", param(u), &column(k, true), Some(closed), cfg.z_max));
    }

    let mut w = output_file(cfg, "curve.csv")?;
    writeln!(w, "u,mean_chi,se,expected_chi")?;
    for r in s.rows_of("ec") {
        writeln!(w, "{},{},{},{}", r.param, r.mean, r.se, r.closed_form.unwrap_or(f64::NAN))?;
    }
    drop(w);
    let emp: Vec<(f64, f64)> = s.rows_of("ec").zip(&cfg.levels).map(|(r, &u)| (u, r.mean)).collect();
    let fine: Vec<(f64, f64)> = match (cfg.levels.first(), cfg.levels.last()) {
        (Some(&a), Some(&b)) if b > a => {
            (0..=200).map(|i| a + (b - a) * i as f64 / 200.0).map(|u| (u, expected_ec_excursion(u, &ctx.lk))).collect()
        }
        _ => Vec::new(),
    };
    write_text(
        cfg,
        "curve.svg",
        &line_chart(
            "mean Euler characteristic of {f >= u}",
            &[
                Series { label: "Monte Carlo", colour: "#c0392b", points: emp },
                Series { label: "closed form", colour: "#2c3e50", points: fine },
            ],
        ),
    )?;
    write_summary(cfg, &s)?;
    Ok(s)
}

pub fn run_euler_integral_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::EulerIntegral)?;
    let ctx = FieldContext::new(cfg)?;
    let ts = transform_spec(cfg.transform);
    let closed = expected_euler_integral(&ts, &ctx.lk, &QuadratureSpec::default())?;
    let ys = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let f = ctx.sampler.sample(seed);
        let g = if ts.is_identity() { f } else { f.map(|x| ts.eval(x)) };
        Ok(euler_integral_real_checked(&g)?)
    })?;
    let mut s = MonteCarloSummary::new(cfg.experiment);
    let name = format!("{:?}", cfg.transform).to_lowercase();
    s.push(SummaryRow::from_samples("euler_integral", name, &ys, Some(closed), cfg.z_max));
    write_summary(cfg, &s)?;
    Ok(s)
}

/// Largest relative residual accepted for the per-realization identity
/// χ(B(f, f_max)) = f_max·χ(M) − ∫ f dχ.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

pub fn run_barcode_ec_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::BarcodeEc)?;
    let ctx = FieldContext::new(cfg)?;
    let chi_m = ctx.chi_m as f64;
    let per_run = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let f = ctx.sampler.sample(seed);
        let bc = reduce(&sublevel_filtration(&f)?)?;
        let vals = cfg.levels.iter().map(|&a| barcode_euler_char(&bc, a)).collect::<Result<Vec<_>, _>>()?;
        let fmax = f.max();
        let lhs = barcode_euler_char(&bc, fmax)?;
        let rhs = fmax * chi_m - euler_integral_real(&f)?;
        let scale = 1.0f64.max(lhs.abs()).max(rhs.abs()).max(fmax.abs());
        Ok((vals, (lhs - rhs).abs() / scale))
    })?;

    let mut s = MonteCarloSummary::new(cfg.experiment);
    for (k, &a) in cfg.levels.iter().enumerate() {
        let xs: Vec<f64> = per_run.iter().map(|(v, _)| v[k]).collect();
        let closed = expected_barcode_ec(a, &ctx.lk, ctx.chi_m);
        s.push(SummaryRow::from_samples("barcode_ec", param(a), &xs, Some(closed), cfg.z_max));
    }
    let worst = per_run.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    let held = per_run.iter().filter(|(_, r)| *r <= IDENTITY_TOLERANCE).count();
    s.push(SummaryRow::assertion("identity_residual", "max_relative", worst, cfg.runs, held == cfg.runs));
    write_summary(cfg, &s)?;
    Ok(s)
}

/// Sorted values of `f` at the given vertices.
fn values_at(f: &GridField<f64>, vs: &[usize]) -> Vec<f64> {
    let mut out: Vec<f64> = vs.iter().map(|&v| f.values()[v]).collect();
    out.sort_by(f64::total_cmp);
    out
}

struct DiagramRun {
    diagram: PersistenceDiagram<f64>,
    h0_matches: bool,
    top_matches: bool,
    ordered: bool,
}

pub fn run_diagram_experiment(cfg: &ExperimentConfig) -> Result<MonteCarloSummary> {
    expect_kind(cfg, ExperimentKind::Diagrams)?;
    let ctx = FieldContext::new(cfg)?;
    let top = cfg.dim - 1;
    let torus = cfg.grid()?.is_torus();
    let runs = realizations(cfg.runs, cfg.base_seed, |_, seed| {
        let f = ctx.sampler.sample(seed);
        let bc = reduce(&superlevel_filtration(&f)?)?;
        let d = diagram(&bc);

        let mut births: Vec<f64> = d.in_degree(0).map(|p| p.birth).collect();
        births.sort_by(f64::total_cmp);
        let h0_matches = births == values_at(&f, &local_maxima(&f));

        let mut deaths: Vec<f64> = d.in_degree(top).filter(|p| !p.essential).map(|p| p.death).collect();
        deaths.sort_by(f64::total_cmp);
        let mut minima = values_at(&f, &star_minima(&f));
        if torus && !minima.is_empty() {
            // The global minimum closes the top-dimensional class instead.
            minima.remove(0);
        }
        let top_matches = deaths == minima;

        let ordered = d.in_degree(0).all(|p| p.birth > p.death);
        Ok(DiagramRun { diagram: d, h0_matches, top_matches, ordered })
    })?;

    let n = runs.len();
    let rate = |k: usize| k as f64 / n as f64;
    let h0 = runs.iter().filter(|r| r.h0_matches).count();
    let tp = runs.iter().filter(|r| r.top_matches).count();
    let ord = runs.iter().filter(|r| r.ordered).count();
    let mut s = MonteCarloSummary::new(cfg.experiment);
    s.push(SummaryRow::assertion("h0_births_eq_local_max", "agreement", rate(h0), n, h0 == n));
    s.push(SummaryRow::assertion(
        &format!("h{top}_deaths_eq_local_min"),
        "agreement",
        rate(tp),
        n,
        tp == n,
    ));
    s.push(SummaryRow::assertion("h0_birth_above_death", "agreement", rate(ord), n, ord == n));
    for k in 0..cfg.dim {
        let counts: Vec<f64> = runs.iter().map(|r| r.diagram.in_degree(k).count() as f64).collect();
        s.push(SummaryRow::info("points", format!("H{k}"), &counts));
    }

    let diagrams: Vec<PersistenceDiagram<f64>> = runs.into_iter().map(|r| r.diagram).collect();
    for k in 0..cfg.dim {
        write_diagram_csv(diagrams.iter().flat_map(|d| d.in_degree(k)), output_file(cfg, &format!("diagram_H{k}.csv"))?)?;
        let (births, deaths) = birth_death_marginals(&diagrams, k, cfg.bin_width)?;
        let mut w = output_file(cfg, &format!("marginals_H{k}.csv"))?;
        writeln!(w, "kind,bin_start,count")?;
        for (name, h) in [("birth", &births), ("death", &deaths)] {
            for (x, c) in h.bins() {
                writeln!(w, "{name},{x},{c}")?;
            }
        }
    }
    if let Some(first) = diagrams.first() {
        write_text(cfg, "diagram.svg", &diagram_svg(first))?;
        let f = ctx.sampler.sample(crate::seeds::realization_seed(cfg.base_seed, 0));
        let bc = reduce(&superlevel_filtration(&f)?)?;
        write_text(cfg, "barcode.svg", &barcode_svg(&bc, -f.min()))?;
    }
    write_summary(cfg, &s)?;
    Ok(s)
}
