mod common;

use common::{rng, weighted_instance};
use fairkc::bounds::{DsBounds, GfBounds};
use fairkc::generators::{gen_l_community, ColorPattern};
use fairkc::metrics::{active_center_colors, cost, ds_violation, gf_violation};
use fairkc::solvers::{alg_ds, alg_gf, assignment_gf, ds_to_gfds, gf_to_gfds, gonzalez, SolverError};
use rand::Rng;

#[test]
fn ds_route_without_dropped_centers_keeps_the_fair_assignment() {
    let mut kept = 0;
    for seed in 0..200 {
        let mut r = rng(seed);
        let n = r.gen_range(12..=40);
        let k = r.gen_range(2..=5);
        let w = [1.0, r.gen_range(0.4..1.0)];
        let inst = weighted_instance(&mut r, n, &w);
        let gfb = GfBounds::from_delta(&inst, 0.3).unwrap();
        let Ok(dsb) = DsBounds::from_theta(&inst, k, 0.5) else { continue };
        let ds = alg_ds(&inst, &dsb).unwrap();
        let step_a = assignment_gf(&inst, ds.centers(), &gfb).unwrap().solution;
        if !step_a.inactive_centers().is_empty() {
            continue;
        }
        let out = ds_to_gfds(&inst, &ds, &gfb, &dsb).unwrap();
        assert!(out.dropped.is_empty());
        assert!(out.added.is_empty());
        assert_eq!(out.solution.assign(), step_a.assign(), "seed {seed}");
        assert!(gf_violation(&inst, &gfb, &out.solution) <= 2.0 + 1e-9);
        kept += 1;
    }
    assert!(kept >= 20, "only {kept} instances kept every center");
}

#[test]
fn balanced_pair_gets_one_center_per_color() {
    for seed in 0..30 {
        let inst = weighted_instance(&mut rng(seed), 20, &[1.0, 1.0]);
        let gfb = GfBounds::from_delta(&inst, 0.2).unwrap();
        let dsb = DsBounds::new(vec![1, 1], vec![2, 2], 2).unwrap();
        let ds = alg_ds(&inst, &dsb).unwrap();
        let out = ds_to_gfds(&inst, &ds, &gfb, &dsb).unwrap().solution;
        assert_eq!(active_center_colors(&inst, &out), vec![1, 1]);
        assert!(gf_violation(&inst, &gfb, &out) <= 3.0 + 1e-9);
    }
}

#[test]
fn exact_input_with_full_budget_stays_exact() {
    let mut checked = 0;
    for seed in 0..300 {
        let mut r = rng(1000 + seed);
        let n = r.gen_range(10..=40);
        let k = r.gen_range(2..=4);
        let w = [1.0, r.gen_range(0.5..1.0)];
        let inst = weighted_instance(&mut r, n, &w);
        let gfb = GfBounds::from_delta(&inst, 0.8).unwrap();
        let Ok(dsb) = DsBounds::from_theta(&inst, k, 0.6) else { continue };
        let input = alg_gf(&inst, k, &gfb, None).unwrap().solution;
        let exact = gf_violation(&inst, &gfb, &input) == 0.0;
        if !exact || input.active_centers().len() != k {
            continue;
        }
        let out = gf_to_gfds(&inst, &input, &gfb, &dsb).unwrap().solution;
        assert_eq!(gf_violation(&inst, &gfb, &out), 0.0, "seed {seed}");
        assert_eq!(ds_violation(&out, &dsb, &inst), 0);
        assert!(cost(&inst, &out) <= 2.0 * cost(&inst, &input) + 1e-12);
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} exact full-budget inputs");
}

#[test]
fn gf_route_output_has_only_active_centers() {
    for seed in 0..50 {
        let mut r = rng(2000 + seed);
        let n = r.gen_range(10..=50);
        let k = r.gen_range(2..=6);
        let inst = weighted_instance(&mut r, n, &[1.0, 0.7, 0.4]);
        let gfb = GfBounds::from_delta(&inst, 0.5).unwrap();
        let Ok(dsb) = DsBounds::from_theta(&inst, k, 0.8) else { continue };
        let input = alg_gf(&inst, k, &gfb, None).unwrap().solution;
        match gf_to_gfds(&inst, &input, &gfb, &dsb) {
            Ok(out) => {
                assert!(out.solution.inactive_centers().is_empty());
                assert!(out.solution.centers().len() <= k);
                assert_eq!(ds_violation(&out.solution, &dsb, &inst), 0);
            }
            // a bi-criteria input may miss a color in some cluster
            Err(SolverError::MissingColorInCluster { .. }) => {}
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
}

#[test]
fn communities_force_mixing_for_the_fair_assignment() {
    let ci = gen_l_community(2, 4, 1.0, ColorPattern::Alternating).unwrap();
    let half = GfBounds::uniform(2, 0.5, 0.5).unwrap();
    let blind = gonzalez(&ci, 2, None).unwrap();
    assert_eq!(cost(&ci, &blind), 0.0);
    let fair = assignment_gf(&ci, blind.centers(), &half).unwrap();
    assert_eq!(fair.radius, 1.0);
    assert_eq!(gf_violation(&ci, &half, &fair.solution), 0.0);
}

#[test]
fn one_center_reports_the_global_violation() {
    let inst = weighted_instance(&mut rng(5), 30, &[2.0, 1.0]);
    let gfb = GfBounds::from_delta(&inst, 0.1).unwrap();
    let sol = alg_gf(&inst, 1, &gfb, None).unwrap().solution;
    assert_eq!(sol.centers().len(), 1);
    assert_eq!(gf_violation(&inst, &gfb, &sol), 0.0);
}

#[test]
fn ds_variant_quota_leaves_a_community_uncovered() {
    let inst = gen_l_community(3, 4, 1.0, ColorPattern::DsVariant).unwrap();
    let dsb = DsBounds::new(vec![1, 1, 1], vec![3, 3, 3], 3).unwrap();
    let sol = alg_ds(&inst, &dsb).unwrap();
    assert_eq!(ds_violation(&sol, &dsb, &inst), 0);
    assert!(cost(&inst, &sol) >= 1.0);
}

#[test]
fn seeded_runs_are_reproducible() {
    let inst = weighted_instance(&mut rng(6), 60, &[1.0, 1.0]);
    let gfb = GfBounds::from_delta(&inst, 0.2).unwrap();
    for seed in 0..5 {
        let a = alg_gf(&inst, 4, &gfb, Some(seed)).unwrap();
        let b = alg_gf(&inst, 4, &gfb, Some(seed)).unwrap();
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.radius, b.radius);
    }
}
