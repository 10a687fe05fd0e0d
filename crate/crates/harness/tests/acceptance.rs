//! Acceptance criteria at full scale. Prints one PASS/FAIL line per
//! criterion. Failures set the exit code only when
//! `TDALAB_ACCEPTANCE_STRICT` is set, so the workspace suite still runs to
//! the end with a red criterion on record.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdalab::experiments::{covered_vertices, sample_annulus};
use tdalab::{
    run_annulus_experiment, run_barcode_ec_experiment, run_diagram_experiment, run_ec_curve_experiment,
    run_euler_integral_experiment, run_target_experiment, run_torus_coverage_experiment, ExperimentConfig,
    ExperimentKind, MonteCarloSummary,
};
use tdalab_core::closed_forms::torus_coverage_expectation;
use tdalab_core::complex::{
    cech_filtration, complex_at, rips_filtration, superlevel_filtration, sublevel_filtration, CubicalGrid,
    FilteredComplex, Metric, PointCloud, SimplexOptions,
};
use tdalab_core::euler::{
    euler_char_lf, euler_integral_upper, euler_integral_upper_checked, OpenCellComplex,
};
use tdalab_core::field::{GridField, GridSpec, Topology};
use tdalab_core::persistence::{betti_at, brute_force_betti, reduce};

const BASE_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg(kind: ExperimentKind, out: &tempfile::TempDir) -> ExperimentConfig {
    ExperimentConfig {
        output_dir: out.path().join(kind.name()),
        base_seed: BASE_SEED,
        ..ExperimentConfig::for_experiment(kind)
    }
}

fn describe(s: &MonteCarloSummary) -> String {
    s.rows
        .iter()
        .filter(|r| r.pass.is_some())
        .map(|r| match r.z {
            Some(z) => format!("{}[{}]: mean {:.4} vs {:.4}, z {:+.2}", r.quantity, r.param, r.mean, r.closed_form.unwrap(), z),
            None => format!("{}[{}] = {:.3e}", r.quantity, r.param, r.mean),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn unit_interval(n: usize, f: impl Fn(f64) -> f64) -> GridField<f64> {
    GridField::from_fn(GridSpec::unit_box(1, n).unwrap(), |p| f(p[0])).unwrap()
}

fn criterion_1(_: &tempfile::TempDir) -> Outcome {
    let mut vals = Vec::new();
    for n in [64, 65, 257] {
        let x = euler_integral_upper_checked(&unit_interval(n, |x| x)).unwrap();
        let y = euler_integral_upper_checked(&unit_interval(n, |x| 1.0 - x)).unwrap();
        let one = euler_integral_upper(&unit_interval(n, |_| 1.0)).unwrap();
        vals.push((x, y, one));
    }
    let pass = vals.iter().all(|&(x, y, one)| {
        (x - 1.0).abs() <= 1e-12 && (y - 1.0).abs() <= 1e-12 && (one - 1.0).abs() <= 1e-12 && (x + y - one - 1.0).abs() <= 1e-12
    });
    let (x, y, one) = vals[0];
    outcome(pass, format!("n=64: ∫x = {x}, ∫(1−x) = {y}, sum {} vs ∫1 = {one}", x + y))
}

fn criterion_2(_: &tempfile::TempDir) -> Outcome {
    let open = euler_char_lf(&OpenCellComplex::new([(1, 1)]));
    let half = euler_char_lf(&OpenCellComplex::new([(0, 1), (1, 1)]));
    let closed = euler_char_lf(&OpenCellComplex::new([(0, 2), (1, 1)]));
    outcome(
        (open, half, closed) == (-1, 0, 1),
        format!("χ((0,1)) = {open}, χ([0,1)) = {half}, χ([0,1]) = {closed}"),
    )
}

fn criterion_3(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::EulerIntegral, out);
    assert_eq!((c.runs, c.size, c.alpha), (2000, 64, 100.0));
    let s = run_euler_integral_experiment(&c).unwrap();
    let r = &s.rows[0];
    // −L₁/√(2π) with L₁ = 2·√λ₂ for the unit square, λ₂ = 2α.
    let oracle = -2.0 * (2.0f64 * 100.0).sqrt() / (2.0 * std::f64::consts::PI).sqrt();
    let closed_ok = (r.closed_form.unwrap() - oracle).abs() < 1e-9 && (oracle + 11.2838).abs() < 1e-4;
    outcome(s.passed() && closed_ok, describe(&s))
}

fn criterion_4(out: &tempfile::TempDir) -> Outcome {
    let c = ExperimentConfig { levels: vec![-1.0, 0.0, 1.0], ..cfg(ExperimentKind::BarcodeEc, out) };
    let s = run_barcode_ec_experiment(&c).unwrap();
    let residual_ok = s.row("identity_residual", "max_relative").is_some_and(|r| r.pass == Some(true) && r.runs == 2000);
    outcome(s.passed() && residual_ok, describe(&s))
}

fn criterion_5(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::EcCurve, out);
    assert_eq!(c.levels.len(), 13);
    let s = run_ec_curve_experiment(&c).unwrap();
    let worst = |q: &str| s.rows_of(q).map(|r| r.z.unwrap().abs()).fold(0.0, f64::max);
    let failed: Vec<String> = s.failures().map(|r| format!("{}[{}] z {:+.2}", r.quantity, r.param, r.z.unwrap())).collect();
    outcome(
        s.passed(),
        format!(
            "13 levels, max |z| EC {:.2}, volume {:.2}{}",
            worst("ec"),
            worst("volume"),
            if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) }
        ),
    )
}

fn random_cubical(rng: &mut ChaCha8Rng) -> FilteredComplex<f64> {
    let sizes: Vec<usize> = match rng.random_range(0..3) {
        0 => vec![rng.random_range(2..=150)],
        1 => vec![rng.random_range(2..=8), rng.random_range(2..=8)],
        _ => vec![rng.random_range(2..=3); 3],
    };
    let topology = if rng.random_bool(0.3) && sizes.iter().all(|&n| n >= 3) { Topology::Torus } else { Topology::Box };
    let spec = GridSpec::new(sizes, 1.0, topology).unwrap();
    // Coarse values produce ties.
    let vals: Vec<f64> = (0..spec.len()).map(|_| rng.random_range(0..12) as f64 * 0.25).collect();
    let f = GridField::new(spec, vals).unwrap();
    if rng.random_bool(0.5) { sublevel_filtration(&f).unwrap() } else { superlevel_filtration(&f).unwrap() }
}

fn random_rips(rng: &mut ChaCha8Rng) -> FilteredComplex<f64> {
    let n = rng.random_range(3..=10);
    let d = rng.random_range(1..=3);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect();
    let metric = if rng.random_bool(0.5) { Metric::L2 } else { Metric::Linf };
    let cloud = PointCloud::new(pts, metric).unwrap();
    let opts = SimplexOptions::new(2);
    if rng.random_bool(0.5) { rips_filtration(&cloud, &opts).unwrap() } else { cech_filtration(&cloud, &opts).unwrap() }
}

fn criterion_6(_: &tempfile::TempDir) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED ^ 6);
    let (mut agree, mut checks, mut max_cells) = (0, 0usize, 0);
    for i in 0..100 {
        let fc = loop {
            let fc = if i % 2 == 0 { random_cubical(&mut rng) } else { random_rips(&mut rng) };
            if fc.len() <= 300 {
                break fc;
            }
        };
        max_cells = max_cells.max(fc.len());
        let bc = reduce(&fc).unwrap();
        let mut times: Vec<f64> = fc.entrance().to_vec();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let ok = times.iter().all(|&t| {
            checks += 1;
            betti_at(&bc, t) == brute_force_betti(fc.cells(), &complex_at(&fc, t)).unwrap()
        });
        agree += ok as usize;
    }
    outcome(agree == 100, format!("{agree}/100 filtrations agree at all {checks} entrance times (≤ {max_cells} cells)"))
}

fn criterion_7(_: &tempfile::TempDir) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED ^ 7);
    let (mut contained, mut interleaved, mut linf_equal) = (0, 0, 0);
    for _ in 0..100 {
        let d = rng.random_range(2..=3usize);
        let n = rng.random_range(4..=64);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect();
        let l2 = PointCloud::new(pts.clone(), Metric::L2).unwrap();
        let opts = SimplexOptions::new(2);
        let rips = rips_filtration(&l2, &opts).unwrap();
        let cech = cech_filtration(&l2, &opts).unwrap();
        let by_vertices: HashMap<&[usize], f64> =
            rips.cells().iter().map(|c| (c.vertices.as_slice(), rips.entrance()[c.id])).collect();
        let factor = (2.0 * d as f64 / (d as f64 + 1.0)).sqrt();
        let mut inc = cech.len() == rips.len();
        let mut inter = inc;
        for c in cech.cells() {
            let e = cech.entrance()[c.id];
            match by_vertices.get(c.vertices.as_slice()) {
                Some(&r) => {
                    inc &= r <= e + 1e-12;
                    inter &= e <= factor * r + 1e-12;
                }
                None => (inc, inter) = (false, false),
            }
        }
        contained += inc as usize;
        interleaved += inter as usize;

        let linf = PointCloud::new(pts, Metric::Linf).unwrap();
        let a = rips_filtration(&linf, &opts).unwrap();
        let b = cech_filtration(&linf, &opts).unwrap();
        linf_equal += (a.cells() == b.cells() && a.entrance() == b.entrance()) as usize;
    }
    outcome(
        contained == 100 && interleaved == 100 && linf_equal == 100,
        format!("Čech ⊆ Rips {contained}/100, √(2d/(d+1)) interleaving {interleaved}/100, L∞ Čech = Rips {linf_equal}/100"),
    )
}

fn criterion_8(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::Targets, out);
    assert_eq!((c.scenes, c.runs), (100, 2000));
    let s = run_target_experiment(&c).unwrap();
    outcome(s.passed(), describe(&s))
}

fn criterion_9(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::TorusCoverage, out);
    assert_eq!((c.dim, c.balls, c.tau, c.size, c.runs), (2, 5, 0.3, 512, 2000));
    let s2 = run_torus_coverage_experiment(&c).unwrap();

    // d = 1: the union of n random arcs of length τ has one component per
    // uncovered gap, and a gap follows a given center with probability (1−τ)^{n−1}.
    let mut formula_ok = true;
    for n in 1..=12 {
        for tau in [0.05, 0.25, 0.3, 0.5, 0.9] {
            let e = torus_coverage_expectation(n, 1, tau).unwrap();
            let gap = n as f64 * (1.0 - tau as f64).powi(n as i32 - 1);
            formula_ok &= (e - gap).abs() <= 1e-12;
        }
    }
    let c1 = ExperimentConfig { dim: 1, size: 4096, balls: 2, tau: 0.25, ..c.clone() };
    let s1 = run_torus_coverage_experiment(&c1).unwrap();

    // Rasterization sanity on one configuration: a lone ball is contractible.
    let spec = GridSpec::new(vec![64, 64], 1.0, Topology::Torus).unwrap();
    let lone = CubicalGrid::new(&spec).unwrap().euler_char_of_vertex_set(&covered_vertices(&spec, &[vec![0.99, 0.02]], 0.2));

    outcome(
        s2.passed() && s1.passed() && formula_ok && lone == 1,
        format!("{}; {}; d=1 formula vs gap oracle {}", describe(&s2), describe(&s1), if formula_ok { "exact" } else { "MISMATCH" }),
    )
}

fn criterion_10(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::Annulus, out);
    assert_eq!((c.points, c.runs, c.inner_radius, c.outer_radius), (500, 100, 0.5, 1.0));
    let s = run_annulus_experiment(&c).unwrap();
    let r = s.row("success_rate", "n=500;min=0.95").unwrap();
    // Sanity of the sampler the trials used.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ok = sample_annulus(&mut rng, 100, 0.5, 1.0).iter().all(|p| (0.5..=1.0).contains(&p[0].hypot(p[1])));
    outcome(
        r.mean >= 0.95 && ok,
        format!("{}/100 trials with dominant H0 and H1 bars (Rips, truncated at radius {})", (r.mean * 100.0).round(), c.max_radius),
    )
}

fn criterion_extrema(out: &tempfile::TempDir) -> Outcome {
    let c = cfg(ExperimentKind::Diagrams, out);
    let s = run_diagram_experiment(&c).unwrap();
    let files = ["diagram_H0.csv", "diagram_H1.csv", "marginals_H0.csv", "summary.csv"]
        .iter()
        .all(|f| c.output_dir.join(f).exists());
    outcome(s.passed() && files, format!("{} realizations: {}", c.runs, describe(&s)))
}

fn main() {
    let out = tempfile::tempdir().unwrap();
    type Criterion = (&'static str, fn(&tempfile::TempDir) -> Outcome, Duration);
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria: [Criterion; 11] = [
        ("1 Euler-calculus exactness", criterion_1, Duration::from_secs(1)),
        ("2 χ conventions", criterion_2, Duration::from_secs(1)),
        ("3 mean Euler integral", criterion_3, min(5)),
        ("4 barcode Euler characteristic", criterion_4, min(10)),
        ("5 expected EC of excursion sets", criterion_5, min(5)),
        ("6 persistence vs brute force", criterion_6, min(2)),
        ("7 Čech/Rips properties", criterion_7, min(2)),
        ("8 target enumeration", criterion_8, min(5)),
        ("9 torus coverage", criterion_9, min(10)),
        ("10 annulus homology recovery", criterion_10, min(5)),
        ("11 local-extrema correspondence", criterion_extrema, min(10)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let o = run(&out);
        let took = t.elapsed();
        let pass = o.pass && took < budget;
        failed += !pass as usize;
        println!(
            "{} criterion {name} ({:.1}s, budget {}s): {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 && std::env::var_os("TDALAB_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
