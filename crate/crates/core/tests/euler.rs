use proptest::prelude::*;
use tdalab_core::complex::CubicalGrid;
use tdalab_core::euler::{
    count_targets, ec_curve_sublevel, ec_curve_superlevel, euler_char_lf, euler_integral_constructible,
    euler_integral_real, euler_integral_real_checked, euler_integral_upper, euler_integral_upper_checked,
    ConstructibleField, OpenCellComplex, SceneFile, Shape, TargetScene,
};
use tdalab_core::field::{GridField, GridSpec, Topology};

fn grid_field() -> impl Strategy<Value = GridField<f64>> {
    (prop::collection::vec(2usize..7, 1..=3), any::<bool>())
        .prop_flat_map(|(sizes, torus)| {
            let torus = torus && sizes.iter().all(|&n| n >= 3);
            let n: usize = sizes.iter().product();
            (Just(sizes), Just(torus), prop::collection::vec(-4.0f64..4.0, n))
        })
        .prop_map(|(sizes, torus, v)| {
            let topo = if torus { Topology::Torus } else { Topology::Box };
            GridField::new(GridSpec::new(sizes, 1.0, topo).unwrap(), v).unwrap()
        })
}

/// χ of the closed complex spanned by the vertices satisfying `keep`.
fn chi_where(f: &GridField<f64>, keep: impl Fn(f64) -> bool) -> i64 {
    let g = CubicalGrid::new(f.spec()).unwrap();
    g.euler_char_of_vertex_set(&f.values().iter().map(|&x| keep(x)).collect::<Vec<_>>())
}

/// Level-set oracle for the lower integral:
/// ∫_0^∞ [χ(M) − χ{f <= u}] du − ∫_0^∞ χ{f <= −u} du, each integrand
/// piecewise constant between consecutive values of |f|.
fn lower_integral_oracle(f: &GridField<f64>) -> f64 {
    let chi_m = CubicalGrid::new(f.spec()).unwrap().euler_char() as f64;
    let mut knots: Vec<f64> = f.values().iter().map(|x| x.abs()).chain([0.0]).collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let mut total = 0.0;
    for w in knots.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let pos = chi_m - chi_where(f, |x| x <= mid) as f64;
        let neg = chi_where(f, |x| x <= -mid) as f64;
        total += (pos - neg) * (w[1] - w[0]);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ec_curves_match_set_builder(f in grid_field(), u in -4.5f64..4.5) {
        let up = ec_curve_superlevel(&f).unwrap();
        let down = ec_curve_sublevel(&f).unwrap();
        prop_assert_eq!(up.at(u), chi_where(&f, |x| x >= u));
        prop_assert_eq!(down.at(u), chi_where(&f, |x| x <= u));
        // Exactly at a vertex value.
        let v = f.values()[0];
        prop_assert_eq!(up.at(v), chi_where(&f, |x| x >= v));
        prop_assert_eq!(down.at(v), chi_where(&f, |x| x <= v));
    }

    #[test]
    fn lower_integral_matches_level_set_oracle(f in grid_field()) {
        let got = euler_integral_real_checked(&f).unwrap();
        let oracle = lower_integral_oracle(&f);
        prop_assert!((got - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()), "{} vs {}", got, oracle);
    }

    #[test]
    fn upper_integral_is_minus_lower_of_negation(f in grid_field()) {
        let up = euler_integral_upper_checked(&f).unwrap();
        let low = euler_integral_real(&f.negated()).unwrap();
        prop_assert!((up + low).abs() <= 1e-9 * (1.0 + up.abs()));
    }

    #[test]
    fn integral_scales_and_shifts(f in grid_field(), c in 0.1f64..5.0, s in -3.0f64..3.0) {
        let chi_m = CubicalGrid::new(f.spec()).unwrap().euler_char() as f64;
        let base = euler_integral_real(&f).unwrap();
        let scaled = euler_integral_real(&f.map(|x| c * x)).unwrap();
        let shifted = euler_integral_real(&f.map(|x| x + s)).unwrap();
        let tol = 1e-9 * (1.0 + base.abs()) * (1.0 + c + s.abs());
        prop_assert!((scaled - c * base).abs() <= tol);
        prop_assert!((shifted - base - s * chi_m).abs() <= tol);
        let ub = euler_integral_upper(&f).unwrap();
        prop_assert!((euler_integral_upper(&f.map(|x| x + s)).unwrap() - ub - s * chi_m).abs() <= tol);
    }

    #[test]
    fn constructible_integral_matches_level_sets(
        sizes in prop::collection::vec(2usize..7, 1..=2),
        seed in prop::collection::vec(-3i64..=3, 36),
    ) {
        let spec = GridSpec::<f64>::new(sizes, 1.0, Topology::Box).unwrap();
        let vals: Vec<i64> = (0..spec.len()).map(|i| seed[i % seed.len()]).collect();
        let as_real = GridField::new(spec.clone(), vals.iter().map(|&x| x as f64).collect()).unwrap();
        let h = ConstructibleField::new(spec, vals).unwrap();
        let oracle: i64 = (1..=3).map(|s| chi_where(&as_real, |x| x >= s as f64)).sum::<i64>()
            - (1..=3).map(|s| chi_where(&as_real, |x| x <= -(s as f64))).sum::<i64>();
        prop_assert_eq!(euler_integral_constructible(&h).unwrap(), oracle);
        // For non-negative integer functions the upper integral is the same sum.
        let pos = as_real.map(|x| x.max(0.0));
        let pos_oracle: i64 = (1..=3).map(|s| chi_where(&pos, |x| x >= s as f64)).sum();
        prop_assert_eq!(euler_integral_upper(&pos).unwrap(), pos_oracle as f64);
    }

    #[test]
    fn target_count_is_exact_and_invariant(
        rects in prop::collection::vec((0.0f64..0.7, 0.0f64..0.7, 0.08f64..0.3, 0.08f64..0.3), 0..7),
        shift in (0usize..4, 0usize..4),
    ) {
        let shapes: Vec<Shape> = rects
            .iter()
            .map(|&(x, y, w, h)| Shape::Rect { lo: vec![x, y], hi: vec![x + w, y + h] })
            .collect();
        let file = SceneFile { sizes: vec![41, 41], side: 1.0, topology: Topology::Box, gamma: 1, shapes: shapes.clone() };
        let scene: TargetScene<f64> = file.to_scene().unwrap();
        prop_assert_eq!(count_targets(&scene).unwrap(), rects.len() as i64);

        // Translate by whole grid steps.
        let step = 1.0 / 40.0;
        let moved: Vec<Shape> = rects
            .iter()
            .map(|&(x, y, w, h)| {
                let (dx, dy) = (shift.0 as f64 * step, shift.1 as f64 * step);
                Shape::Rect { lo: vec![x + dx, y + dy], hi: vec![x + w + dx, y + h + dy] }
            })
            .collect();
        let big = GridSpec::new(vec![45, 45], 44.0 / 40.0, Topology::Box).unwrap();
        let moved_scene = TargetScene::from_shapes(big, &moved, 1).unwrap();
        prop_assert_eq!(count_targets(&moved_scene).unwrap(), rects.len() as i64);

        // Subdivide the grid by two.
        let fine = SceneFile { sizes: vec![81, 81], ..file };
        prop_assert_eq!(count_targets(&fine.to_scene::<f64>().unwrap()).unwrap(), rects.len() as i64);
    }
}

#[test]
fn interval_worked_example() {
    let spec = GridSpec::<f64>::unit_box(1, 64).unwrap();
    let x = GridField::from_fn(spec.clone(), |p| p[0]).unwrap();
    let y = GridField::from_fn(spec.clone(), |p| 1.0 - p[0]).unwrap();
    let one = GridField::constant(spec, 1.0).unwrap();
    let (a, b, c) = (
        euler_integral_upper_checked(&x).unwrap(),
        euler_integral_upper_checked(&y).unwrap(),
        euler_integral_upper_checked(&one).unwrap(),
    );
    assert!((a - 1.0).abs() <= 1e-12 && (b - 1.0).abs() <= 1e-12 && (c - 1.0).abs() <= 1e-12);
    // Integration against χ is not additive over real-valued functions.
    assert!((a + b - c - 1.0).abs() <= 1e-12);
}

#[test]
fn interval_conventions() {
    assert_eq!(euler_char_lf(&OpenCellComplex::new([(1, 1)])), -1);
    assert_eq!(euler_char_lf(&OpenCellComplex::new([(0, 1), (1, 1)])), 0);
    assert_eq!(euler_char_lf(&OpenCellComplex::new([(0, 2), (1, 1)])), 1);
    // Open 2-cell plus a separate point.
    let disc = OpenCellComplex::new([(2, 1)]);
    let point = OpenCellComplex::new([(0, 1)]);
    assert_eq!(euler_char_lf(&disc.union(&point)), 2);
}

#[test]
fn disjoint_discs() {
    let spec = GridSpec::<f64>::new(vec![61, 61], 1.0, Topology::Box).unwrap();
    let discs = [
        Shape::Disc { center: vec![0.25, 0.25], radius: 0.12 },
        Shape::Disc { center: vec![0.7, 0.7], radius: 0.2 },
        Shape::Disc { center: vec![0.75, 0.2], radius: 0.1 },
    ];
    let scene = TargetScene::from_shapes(spec.clone(), &discs, 1).unwrap();
    assert_eq!(count_targets(&scene).unwrap(), 3);
    assert_eq!(count_targets(&TargetScene::new(spec, vec![], 1).unwrap()).unwrap(), 0);
}

#[test]
fn non_contractible_support_is_rejected_for_gamma_one() {
    let spec = GridSpec::<f64>::new(vec![5, 5], 1.0, Topology::Box).unwrap();
    let grid = CubicalGrid::new(&spec).unwrap();
    // Boundary ring of the 5×5 grid: every cell whose vertices all lie on the border.
    let border: Vec<bool> = (0..25).map(|v| {
        let c = spec.coords(v);
        c.iter().any(|&x| x == 0 || x == 4)
    }).collect();
    let ring: Vec<usize> = (0..grid.n_cells()).filter(|&c| grid.vertices(c).iter().all(|&v| border[v])).collect();
    assert!(TargetScene::new(spec.clone(), vec![ring.clone()], 1).is_err());
    assert!(TargetScene::new(spec, vec![ring], 0).is_err());
}
