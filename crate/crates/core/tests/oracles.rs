//! Hand-checked examples for every public operation.

use mvlsm_core::{
    build_front_with_weights, build_grid, chebyshev, hypervolume, ideal_point, level_set_stats,
    minimizer_points, normalize_weights, pareto_dominates, performance_profile, purity,
    random_weight, reference_front, registry_get, solve, strictly_dominates,
    weak_nondominated_filter, weighted_sum, BoxDomain, Error, FrontConfig, InitialLevel,
    MultiobjectiveProblem, SampleGrid, SolveStatus, SolverConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn equal_grid(n: usize) -> SampleGrid {
    let points = (0..n).map(|i| i as f64).collect();
    SampleGrid::from_parts(1, points, vec![1.0; n]).unwrap()
}

fn config(c0: f64) -> SolverConfig {
    SolverConfig {
        c0: InitialLevel::Value(c0),
        ..SolverConfig::default()
    }
}

// problem-suite

#[test]
fn registry_lookup_examples() {
    let sch1 = registry_get("SCH1").unwrap();
    assert_eq!((sch1.dim(), sch1.num_objectives()), (1, 2));
    assert_eq!(sch1.evaluate(&[1.0]).unwrap().to_vec(), vec![1.0, 1.0]);

    let zdt1 = registry_get("ZDT1").unwrap();
    assert_eq!((zdt1.dim(), zdt1.num_objectives()), (4, 2));
    assert_eq!(zdt1.domain().lower(), &[0.0; 4]);
    assert_eq!(zdt1.domain().upper(), &[1.0; 4]);

    match registry_get("NOSUCH") {
        Err(Error::UnknownProblem { available, .. }) => {
            assert!(available.iter().any(|id| id == "ZDT4"))
        }
        other => panic!("expected lookup error, got {other:?}"),
    }
}

#[test]
fn mop13_is_an_alias_of_sch1() {
    let a = registry_get("mop13").unwrap();
    let b = registry_get("sch1").unwrap();
    assert_eq!(a.evaluate(&[0.3]).unwrap(), b.evaluate(&[0.3]).unwrap());
}

#[test]
fn evaluate_examples() {
    let sch1 = registry_get("SCH1").unwrap();
    assert_eq!(sch1.evaluate(&[0.0]).unwrap().to_vec(), vec![0.0, 4.0]);
    assert_eq!(sch1.evaluate(&[2.0]).unwrap().to_vec(), vec![4.0, 0.0]);
    let zdt1 = registry_get("ZDT1").unwrap();
    assert_eq!(zdt1.evaluate(&[0.0; 4]).unwrap().to_vec(), vec![0.0, 1.0]);
    match zdt1.evaluate(&[0.5, 0.5, 1.5, 0.5]) {
        Err(Error::DomainViolation { index, .. }) => assert_eq!(index, 2),
        other => panic!("expected domain violation, got {other:?}"),
    }
}

#[test]
fn registry_problems_are_finite_on_their_default_grids() {
    for id in mvlsm_core::registry_ids() {
        let p = registry_get(id).unwrap();
        let grid = build_grid(p.domain(), 10_000).unwrap();
        for x in grid.points() {
            let y = p.evaluate(x).unwrap();
            assert_eq!(y.len(), p.num_objectives());
            assert!(y.iter().all(|v| v.is_finite()), "{id} at {x:?}");
        }
    }
}

#[test]
fn sch1_analytic_front_identity() {
    let p = registry_get("SCH1").unwrap();
    let front = p.analytic_front().unwrap();
    for i in 0..100 {
        let x = 2.0 * i as f64 / 99.0;
        let y = p.evaluate(&[x]).unwrap();
        assert!(close(y[1], (y[0].sqrt() - 2.0).powi(2), 1e-12));
        assert!(front.contains(&y, 1e-12));
    }
}

// scalarize

#[test]
fn normalize_examples() {
    let w = normalize_weights(&[1.0, 1.0]).unwrap();
    assert_eq!(w.entries(), &[0.5, 0.5]);
    assert!(w.is_strict());
    let w = normalize_weights(&[2.0, 1.0, 1.0]).unwrap();
    assert_eq!(w.entries(), &[0.5, 0.25, 0.25]);
    let w = normalize_weights(&[0.0, 3.0]).unwrap();
    assert_eq!(w.entries(), &[0.0, 1.0]);
    assert!(!w.is_strict());
    assert!(normalize_weights(&[0.0, 0.0]).is_err());
    assert!(normalize_weights(&[-1.0, 2.0]).is_err());
}

#[test]
fn random_weight_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = random_weight(2, &mut rng).unwrap();
    assert!(w.is_strict());
    assert!(w.entries().iter().all(|&v| v > 0.0 && v < 1.0));
    assert!(close(w.entries().iter().sum(), 1.0, 1e-12));

    let again = random_weight(2, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(w, again);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mean = (0..10_000)
        .map(|_| random_weight(2, &mut rng).unwrap().entries()[0])
        .sum::<f64>()
        / 10_000.0;
    assert!(close(mean, 0.5, 0.02), "mean {mean}");
}

#[test]
fn weighted_sum_examples() {
    let w = normalize_weights(&[1.0, 1.0]).unwrap();
    assert_eq!(weighted_sum(&w, &[2.0, 4.0]).unwrap(), 3.0);
    let w = normalize_weights(&[1.0, 0.0]).unwrap();
    assert_eq!(weighted_sum(&w, &[7.5, -3.0]).unwrap(), 7.5);
    let w = normalize_weights(&[1.0, 3.0]).unwrap();
    assert_eq!(weighted_sum(&w, &[4.0, 0.0]).unwrap(), 1.0);
    assert!(weighted_sum(&w, &[1.0]).is_err());
}

#[test]
fn chebyshev_examples() {
    let w = normalize_weights(&[1.0, 1.0]).unwrap();
    assert_eq!(chebyshev(&w, &[0.0, 0.0], &[2.0, 4.0]).unwrap(), 2.0);
    assert_eq!(chebyshev(&w, &[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
    let v = chebyshev(&w, &[-1e-4, -1e-4], &[0.0, 4.0]).unwrap();
    assert!(close(v, 2.00005, 1e-12));
    assert!(chebyshev(&w, &[0.0], &[1.0, 1.0]).is_err());
}

#[test]
fn ideal_point_examples() {
    let sch1 = registry_get("SCH1").unwrap();
    let grid = build_grid(sch1.domain(), 10_000).unwrap();
    let info = ideal_point(&sch1, &grid, &[1e-4, 1e-4]).unwrap();
    let h = 15.0 / 9_999.0;
    // One grid cell from the analytic minimum at 0 and 2.
    assert!(info.ideal.iter().all(|&v| (0.0..=h * h).contains(&v)));
    for l in 0..2 {
        assert_eq!(info.utopian[l], info.ideal[l] - 1e-4);
    }

    let constant =
        MultiobjectiveProblem::new("const", BoxDomain::cube(1, 0.0, 1.0).unwrap(), 2, |_| {
            vec![3.0, 7.0]
        })
        .unwrap();
    let grid = build_grid(constant.domain(), 11).unwrap();
    let info = ideal_point(&constant, &grid, &[1.0, 1.0]).unwrap();
    assert_eq!(info.ideal, vec![3.0, 7.0]);
    assert_eq!(info.utopian, vec![2.0, 6.0]);

    let single = SampleGrid::from_parts(1, vec![0.5], vec![1.0]).unwrap();
    let info = ideal_point(&sch1, &single, &[1e-4, 1e-4]).unwrap();
    assert_eq!(info.ideal, vec![0.25, 2.25]);
}

// levelset-integrate

#[test]
fn build_grid_examples() {
    let g = build_grid(&BoxDomain::cube(1, 0.0, 1.0).unwrap(), 3).unwrap();
    assert_eq!(
        g.points().flatten().copied().collect::<Vec<_>>(),
        vec![0.0, 0.5, 1.0]
    );
    assert_eq!(g.quad_weights(), &[0.25, 0.5, 0.25]);
    assert_eq!(g.total_measure(), 1.0);

    let g = build_grid(&BoxDomain::cube(2, 0.0, 1.0).unwrap(), 10_000).unwrap();
    assert_eq!((g.per_dim_counts(), g.len()), (&[100, 100][..], 10_000));

    let g = build_grid(&BoxDomain::cube(4, 0.0, 1.0).unwrap(), 10_000).unwrap();
    assert_eq!(g.per_dim_counts(), &[10; 4]);

    assert!(matches!(
        build_grid(&BoxDomain::cube(4, 0.0, 1.0).unwrap(), 15),
        Err(Error::Config(_))
    ));
}

#[test]
fn level_set_stats_examples() {
    let grid = equal_grid(3);
    let s = level_set_stats(&[5.0; 3], &grid, 7.0).unwrap();
    assert_eq!((s.mean, s.variance, s.modified_variance), (5.0, 0.0, 4.0));

    let s = level_set_stats(&[1.0, 2.0, 3.0], &grid, 2.0).unwrap();
    assert_eq!(s.in_count, 2);
    assert!(close(s.mean, 1.5, 1e-15));
    assert!(close(s.variance, 0.25, 1e-15));
    assert!(close(s.modified_variance, 0.5, 1e-15));

    match level_set_stats(&[1.0, 2.0, 3.0], &grid, 0.5) {
        Err(Error::EmptyLevelSet { min }) => assert_eq!(min, 1.0),
        other => panic!("expected empty level set, got {other:?}"),
    }
}

#[test]
fn quadrature_sanity_on_the_identity() {
    let grid = build_grid(&BoxDomain::cube(1, 0.0, 1.0).unwrap(), 101).unwrap();
    let values: Vec<f64> = grid.points().map(|x| x[0]).collect();
    let all = level_set_stats(&values, &grid, f64::INFINITY).unwrap();
    assert!(close(all.mean, 0.5, 1e-4));
    let at_one = level_set_stats(&values, &grid, 1.0).unwrap();
    // Trapezoid error for (x-1)^2 is h^2/6.
    assert!(close(at_one.modified_variance, 1.0 / 3.0, 2e-5));
}

#[test]
fn uniform_and_trapezoid_means_agree_to_grid_order() {
    let grid = build_grid(&BoxDomain::cube(1, 0.0, 1.0).unwrap(), 201).unwrap();
    let values: Vec<f64> = grid.points().map(|x| (3.0 * x[0]).sin()).collect();
    let trap = level_set_stats(&values, &grid, 0.8).unwrap();
    let flat = level_set_stats(&values, &grid.with_uniform_weights(), 0.8).unwrap();
    assert!(close(trap.mean, flat.mean, 1.0 / 200.0));
}

// mvlsm-solver

#[test]
fn solve_examples() {
    let t = solve(&[5.0; 3], &equal_grid(3), &config(1e8)).unwrap();
    assert_eq!(t.c_seq, vec![1e8, 5.0]);
    assert_eq!(t.vf_seq[1], 0.0);
    assert_eq!(
        (t.c_bar, t.status, t.iterations()),
        (5.0, SolveStatus::Converged, 2)
    );

    let t = solve(&[1.0, 2.0, 3.0], &equal_grid(3), &config(10.0)).unwrap();
    assert_eq!(t.c_seq, vec![10.0, 2.0, 1.5, 1.0]);
    assert!(t.vf_seq.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(*t.vf_seq.last().unwrap(), 0.0);
    assert_eq!(t.c_bar, 1.0);

    let t = solve(&[1.0, 2.0, 3.0], &equal_grid(3), &config(0.5)).unwrap();
    assert_eq!(t.status, SolveStatus::EmptyInitialLevelSet);

    assert!(matches!(
        solve(&[1.0, f64::NAN, 3.0], &equal_grid(3), &config(10.0)),
        Err(Error::NonFinite(_))
    ));
}

#[test]
fn auto_initial_level_starts_above_the_maximum() {
    let cfg = SolverConfig {
        c0: InitialLevel::Auto,
        ..SolverConfig::default()
    };
    let t = solve(&[1.0, 2.0, 3.0], &equal_grid(3), &cfg).unwrap();
    assert_eq!(t.c_seq[0], 4.0);
    assert_eq!(t.c_bar, 1.0);
}

#[test]
fn minimizer_points_examples() {
    let grid = equal_grid(3);
    let mut cfg = config(10.0);
    cfg.membership_tol = 0.0;
    let t = solve(&[1.0, 2.0, 3.0], &grid, &cfg).unwrap();
    assert_eq!(minimizer_points(&t, &grid).unwrap(), vec![vec![0.0]]);

    cfg.membership_tol = 0.6;
    let t = solve(&[1.0, 2.0, 3.0], &grid, &cfg).unwrap();
    assert_eq!(minimizer_points(&t, &grid).unwrap(), vec![vec![0.0]]);

    let t = solve(&[4.0; 3], &grid, &config(10.0)).unwrap();
    assert_eq!(minimizer_points(&t, &grid).unwrap().len(), 3);

    let t = solve(&[1.0, 2.0, 3.0], &grid, &config(0.5)).unwrap();
    assert!(matches!(
        minimizer_points(&t, &grid),
        Err(Error::NotConverged(_))
    ));
}

// front-builder

#[test]
fn dominance_examples() {
    assert!(strictly_dominates(&[0.0, 0.0], &[1.0, 1.0]).unwrap());
    assert!(!strictly_dominates(&[1.0, 2.0], &[1.0, 3.0]).unwrap());
    assert!(!strictly_dominates(&[1.0, 2.0], &[2.0, 1.0]).unwrap());
    assert!(strictly_dominates(&[1.0], &[1.0, 2.0]).is_err());

    assert!(pareto_dominates(&[1.0, 2.0], &[1.0, 3.0]).unwrap());
    assert!(!pareto_dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
    assert!(!pareto_dominates(&[2.0, 1.0], &[1.0, 2.0]).unwrap());
    assert!(pareto_dominates(&[1.0], &[1.0, 2.0]).is_err());
}

#[test]
fn filter_examples() {
    let pts = vec![
        vec![0.0, 1.0],
        vec![1.0, 0.0],
        vec![0.5, 0.5],
        vec![1.0, 1.0],
    ];
    assert_eq!(weak_nondominated_filter(&pts).unwrap(), vec![0, 1, 2]);
    let same = vec![vec![2.0, 2.0]; 4];
    assert_eq!(weak_nondominated_filter(&same).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(
        weak_nondominated_filter(&[vec![3.0, 1.0]]).unwrap(),
        vec![0]
    );
}

#[test]
fn sch1_front_lies_on_the_analytic_curve() {
    let p = registry_get("SCH1").unwrap();
    let cfg = FrontConfig {
        num_weights: 200,
        seed: 7,
        apply_filter: true,
        ..FrontConfig::default()
    };
    let front = mvlsm_core::build_front(&p, &cfg).unwrap();
    assert!(front.points.len() >= 50);
    for pt in &front.points {
        let (y1, y2) = (pt.fx[0], pt.fx[1]);
        assert!((-1e-2..=4.0 + 1e-2).contains(&y1));
        assert!((y2 - (y1.max(0.0).sqrt() - 2.0).powi(2)).abs() <= 1e-2);
    }
}

#[test]
fn identical_objectives_collapse_to_the_global_minimizer() {
    let p = MultiobjectiveProblem::new("twin", BoxDomain::cube(1, -1.0, 1.0).unwrap(), 2, |x| {
        let v = (x[0] - 0.3).powi(2);
        vec![v, v]
    })
    .unwrap();
    let mut cfg = FrontConfig {
        num_weights: 1,
        grid_budget: 201,
        ..FrontConfig::default()
    };
    cfg.solver = SolverConfig {
        epsilon: 0.0,
        membership_tol: 0.0,
        ..SolverConfig::default()
    };
    let w = normalize_weights(&[0.5, 0.5]).unwrap();
    let front = build_front_with_weights(&p, &[w], &cfg).unwrap();
    assert_eq!(front.points.len(), 1);
    assert!(close(front.points[0].x[0], 0.3, 1e-12));
}

#[test]
fn front_is_deterministic_for_a_seed() {
    let p = registry_get("POL").unwrap();
    let cfg = FrontConfig {
        num_weights: 20,
        seed: 5,
        ..FrontConfig::default()
    };
    let a = mvlsm_core::build_front(&p, &cfg).unwrap();
    let b = mvlsm_core::build_front(&p, &cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

// metrics

#[test]
fn reference_front_examples() {
    let r = reference_front(&[vec![vec![1.0, 2.0]], vec![vec![2.0, 1.0]]]).unwrap();
    assert_eq!(r.points, vec![vec![1.0, 2.0], vec![2.0, 1.0]]);
    let r = reference_front(&[vec![vec![1.0, 1.0]], vec![vec![2.0, 2.0]]]).unwrap();
    assert_eq!(r.points, vec![vec![1.0, 1.0]]);
    let r = reference_front(&[
        vec![vec![0.0, 3.0], vec![1.0, 1.0]],
        vec![vec![1.0, 1.0], vec![3.0, 0.0]],
    ])
    .unwrap();
    assert_eq!(
        r.points,
        vec![vec![0.0, 3.0], vec![1.0, 1.0], vec![3.0, 0.0]]
    );
    assert!(reference_front(&[vec![], vec![]]).is_err());
}

#[test]
fn purity_examples() {
    let front = vec![vec![0.0, 2.0], vec![1.0, 1.0]];
    let r = reference_front(std::slice::from_ref(&front)).unwrap();
    assert_eq!(purity(&front, &r, 1e-9).unwrap(), 1.0);

    let r = reference_front(&[vec![vec![0.0, 0.0]]]).unwrap();
    assert_eq!(purity(&front, &r, 1e-9).unwrap(), 0.0);

    let r = mvlsm_core::ReferenceFront {
        points: vec![vec![1.0, 2.0], vec![3.0, 0.0]],
        source_counts: vec![2],
    };
    assert_eq!(
        purity(&[vec![1.0, 2.0], vec![5.0, 5.0]], &r, 1e-9).unwrap(),
        0.5
    );
    assert!(matches!(purity(&[], &r, 1e-9), Err(Error::UndefinedPurity)));
}

#[test]
fn hypervolume_examples() {
    assert_eq!(
        hypervolume(&[vec![1.0, 2.0], vec![2.0, 1.0]], &[3.0, 3.0]).unwrap(),
        3.0
    );
    assert_eq!(hypervolume(&[vec![0.0, 0.0]], &[1.0, 1.0]).unwrap(), 1.0);
    assert_eq!(hypervolume(&[], &[1.0, 1.0]).unwrap(), 0.0);
    assert!(matches!(
        hypervolume(&[vec![0.0; 4]], &[1.0; 4]),
        Err(Error::UnsupportedDimension(4))
    ));
}

#[test]
fn profile_examples() {
    let ids = |n: usize| (0..n).map(|i| format!("s{i}")).collect::<Vec<_>>();

    let curves = performance_profile(&ids(1), &[vec![Some(3.0), Some(0.5)]]).unwrap();
    assert!([1.0, 2.0, 100.0]
        .iter()
        .all(|&t| curves[0].rho_at(t) == 1.0));

    let costs = vec![vec![Some(1.0), Some(2.0)], vec![Some(2.0), Some(1.0)]];
    for c in performance_profile(&ids(2), &costs).unwrap() {
        assert_eq!((c.rho_at(1.0), c.rho_at(2.0)), (0.5, 1.0));
    }

    let costs = vec![vec![Some(1.0), Some(2.0)], vec![None, None]];
    let curves = performance_profile(&ids(2), &costs).unwrap();
    assert!(curves[1].rho_values.iter().all(|&r| r == 0.0));
}
