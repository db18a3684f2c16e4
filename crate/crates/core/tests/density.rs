use opball::{
    approx_operator, bounded_transform, density_profile, ensemble_draw, ensemble_experiment,
    metric_d, op_norm, symmetry_residual, truncate, Reference,
};

#[test]
fn pipeline_invariants_at_desk_scale() {
    let report = ensemble_experiment(8, 2, 50, 7).unwrap();
    assert!(
        report.all_invariants_hold,
        "{:?}",
        report
            .per_trial
            .iter()
            .flat_map(|t| &t.violations)
            .collect::<Vec<_>>()
    );
    assert!(report.max_sym_residual <= 1e-8);
    assert!(report.max_recovery_error <= 1e-8);
    assert_eq!(report.min_at_full_depth_fraction, 1.0);
    assert!(report.median_non_increasing, "{:?}", report.median_dist);
    assert!(*report.median_dist.last().unwrap() <= 1e-8);
}

#[test]
fn each_step_is_a_symmetric_contraction_extension() {
    for index in 0..10 {
        let (t, pair) = ensemble_draw(6, 3, 11, index).unwrap();
        let t_hat = bounded_transform(&t).unwrap();
        for n in 1..=6 {
            let step = approx_operator(&t, &pair, n).unwrap();
            assert_eq!(step.depth, n);
            assert!(symmetry_residual(step.operator.mat(), &step.pair).unwrap() <= 1e-8);
            let a_n = truncate(&t_hat, n).unwrap();
            assert!((op_norm(step.a_tilde.mat()) - a_n.norm()).abs() <= 1e-12);
            assert!(step.a_tilde.norm() < 1.0);
        }
        let full = approx_operator(&t, &pair, 6).unwrap();
        let corner = full.operator.mat().block(0, 0, 3, 6);
        assert!(op_norm(&(corner - t.mat())) <= 1e-8 * op_norm(t.mat()).max(1.0));
    }
}

#[test]
fn distance_to_full_depth_vanishes() {
    let (t, pair) = ensemble_draw(5, 2, 3, 0).unwrap();
    let profile = density_profile(&t, &pair, Reference::FullDepth).unwrap();
    assert_eq!(profile.rows.len(), 5);
    let full = approx_operator(&t, &pair, 5).unwrap().operator;
    for row in &profile.rows {
        let direct = metric_d(&approx_operator(&t, &pair, row.n).unwrap().operator, &full).unwrap();
        assert!((direct - row.dist).abs() <= 1e-12);
    }
    assert!(profile.rows[4].dist <= 1e-8);
    assert!(profile.route_gap() <= 1e-8);
}

/// The symmetric extension of `T` itself is a different reference from the
/// full-depth iterate when `q < p`; with `p = q` they coincide.
#[test]
fn extension_reference_matches_only_for_square_models() {
    let (t, pair) = ensemble_draw(4, 4, 5, 0).unwrap();
    let square = density_profile(&t, &pair, Reference::Extension).unwrap();
    assert!(square.rows.last().unwrap().dist <= 1e-8);

    let (t, pair) = ensemble_draw(8, 2, 5, 0).unwrap();
    let rect = density_profile(&t, &pair, Reference::Extension).unwrap();
    assert!(rect.rows.last().unwrap().dist > 1e-6);
}

#[test]
fn ensemble_is_deterministic_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| serde_json::to_string(&ensemble_experiment(6, 2, 12, 99).unwrap()).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
}

#[test]
fn rejects_bad_dimensions() {
    assert!(ensemble_experiment(2, 3, 1, 0).is_err());
    assert!(ensemble_experiment(3, 0, 1, 0).is_err());
    assert!(ensemble_experiment(3, 2, 0, 0).is_err());
}
