mod common;

use common::{linear_model, shifted_model};
use signal_eq::cse::{
    assemble_cse, solve_initial_pair, solve_pooling, BeliefSupport, EntryCase, EntryOutcome, Regime, SolveOptions,
};
use signal_eq::model::ReactionInterval;

fn closed_belief(s: f64) -> f64 {
    (3.0 * s + 1.0).cbrt()
}

fn closed_reaction(s: f64) -> f64 {
    ((3.0 * s + 1.0).powf(2.0 / 3.0) - 1.0) / 2.0
}

fn point(b: BeliefSupport<f64>) -> f64 {
    match b {
        BeliefSupport::Point(z) => z,
        other => panic!("expected a point belief, got {other:?}"),
    }
}

#[test]
fn separating_arc_matches_closed_forms() {
    let m = linear_model(0.0, Some(2.0));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::Separating);
    assert!((sol.tau_top.unwrap() - 1.5).abs() < 1e-9);
    let top = sol.arc_top().unwrap();
    assert!((top - 7.0 / 3.0).abs() < 1e-9);
    let n = 10_000;
    let mut worst = 0.0f64;
    for i in 0..=n {
        let s = top * i as f64 / n as f64;
        worst = worst.max((point(sol.belief(s)) - closed_belief(s)).abs());
        worst = worst.max((sol.reaction(s).unwrap() - closed_reaction(s)).abs());
    }
    assert!(worst < 1e-6, "sup error {worst}");
}

#[test]
fn separating_strategy_inverts_belief() {
    let m = linear_model(0.0, Some(2.0));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    for i in 0..=50 {
        let z = 1.0 + i as f64 / 50.0;
        assert!((sol.sigma(z) - (z.powi(3) - 1.0) / 3.0).abs() < 1e-7, "z = {z}");
    }
    assert_eq!(sol.sigma(1.0), 0.0);
}

#[test]
fn strict_regime_thresholds_and_jump() {
    let m = linear_model(0.0, Some(1.2));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::StrictlyWellBehaved);
    let jump = sol.thresholds.unwrap().jump.unwrap();
    assert!((jump.z_h - 1.7).abs() < 1e-6);
    // type z_h is indifferent between the arc top and the pooled action
    let arc_top = (1.7f64.powi(3) - 1.0) / 3.0;
    let s_h = 1.7 * (1.2 - 0.945 + arc_top / 1.7);
    assert!((jump.s_h - s_h).abs() < 1e-5, "s_h = {}", jump.s_h);
    assert!((jump.s_h - 1.7378333).abs() < 1e-5);
    let below = sol.arc_top().unwrap();
    assert!((below - 1.3043333).abs() < 1e-6);
    assert!(below < jump.s_h);
    let reaction_below = sol.arc.reactions[sol.arc.len() - 1];
    assert!((reaction_below - 0.945).abs() < 1e-6);
    assert!(reaction_below < 1.2);
    let pool = sol.pooled.unwrap();
    assert_eq!(pool.reaction, 1.2);
    assert!((pool.types.hi - pool.types.lo - 0.3).abs() < 1e-8);
    assert!((pool.receivers.hi - pool.receivers.lo - 0.3).abs() < 1e-8);
}

#[test]
fn strict_regime_offpath_beliefs() {
    let m = linear_model(0.0, Some(1.2));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    let jump = sol.thresholds.unwrap().jump.unwrap();
    let gap = 0.5 * (sol.arc_top().unwrap() + jump.s_h);
    assert!(!sol.on_path(gap));
    assert_eq!(point(sol.belief(gap)), jump.z_h);
    assert_eq!(point(sol.belief(2.0 * jump.s_h)), 2.0);
    assert_eq!(sol.belief(jump.s_h), BeliefSupport::Interval(jump.z_h, 2.0));
    assert_eq!(sol.reaction(gap), None);
    assert_eq!(sol.reaction(jump.s_h + 1.0), Some(1.2));
}

#[test]
fn interior_entry_pair() {
    let m = linear_model(1.2, None);
    let EntryOutcome::Pair(pair) = solve_initial_pair(&m).unwrap() else {
        panic!("market should open");
    };
    assert_eq!(pair.case, EntryCase::InteriorEntry);
    assert!((pair.z_ell - 1.2f64.sqrt()).abs() < 1e-8);
    assert!((pair.s_ell - 1.2 * 1.2f64.sqrt()).abs() < 1e-8);

    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    let th = sol.thresholds.unwrap();
    assert!(sol.sender_utility(&m, th.z_ell).abs() < 1e-8);
    assert!(sol.receiver_utility(&m, th.x_ell).abs() < 1e-8);
    assert_eq!(sol.sigma(1.05), 0.0);
    assert_eq!(sol.belief(0.0), BeliefSupport::Interval(1.0, th.z_ell));
}

#[test]
fn lowest_pair_enters_without_floor() {
    let m = linear_model(0.0, None);
    let EntryOutcome::Pair(pair) = solve_initial_pair(&m).unwrap() else {
        panic!("market should open");
    };
    assert_eq!(pair.case, EntryCase::AllTypesEnter);
    assert_eq!((pair.s_ell, pair.z_ell), (0.0, 1.0));
}

#[test]
fn unreachable_floor_empties_the_market() {
    let m = linear_model(10.0, None);
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::EmptyMarket);
    assert!(sol.thresholds.is_none());
    assert_eq!(sol.sigma(2.0), 0.0);
    assert!(!sol.metadata.notes.is_empty());
}

#[test]
fn pooling_pair_solves_both_equations() {
    let m = shifted_model(1.0, 1.0);
    let pair = solve_pooling(&m, 1.0).unwrap();
    let z_star = (17.0f64.sqrt() - 1.0) / 2.0;
    assert!((pair.z_star - z_star).abs() < 1e-7);
    assert!((pair.s_star - (z_star - 1.0)).abs() < 1e-7);
    // the marginal sender just covers its cost, the marginal receiver breaks even
    assert!((m.c(pair.s_star, pair.z_star) - 1.0).abs() < 1e-9);
    let x = m.quantile_match(pair.z_star).unwrap();
    let mean_above = (pair.z_star + 2.0) / 2.0;
    assert!(((x - 1.0) * mean_above - 1.0).abs() < 1e-9);
}

#[test]
fn pooling_pair_with_zero_reaction_is_exact() {
    let m = shifted_model(0.0, 0.0);
    let pair = solve_pooling(&m, 0.0).unwrap();
    assert_eq!((pair.z_star, pair.s_star), (1.0, 0.0));
}

#[test]
fn degenerate_interval_gives_pooling_regime() {
    let m = shifted_model(1.0, 1.0);
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::Pooling);
    let pool = sol.pooled.unwrap();
    let z_star = (17.0f64.sqrt() - 1.0) / 2.0;
    assert!((pool.types.lo - z_star).abs() < 1e-7);
    assert!((sol.sigma(1.9) - (z_star - 1.0)).abs() < 1e-7);
    assert_eq!(sol.sigma(1.2), 0.0);
    assert_eq!(sol.reaction(pool.action), Some(1.0));
}

#[test]
fn raising_the_cap_past_the_top_reaction_separates() {
    let base = linear_model(0.0, Some(1.5 + 1e-6));
    let sol = assemble_cse(&base, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::Separating);
    let capped = base.with_reactions(ReactionInterval::bounded(0.0, 1.49).unwrap());
    let sol = assemble_cse(&capped, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::StrictlyWellBehaved);
}

#[test]
fn metadata_records_certificates_and_conditioning() {
    let m = linear_model(0.0, Some(2.0));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert!(sol.metadata.certificates.len() >= 6);
    assert!(!sol.metadata.assumptions_waived);
    let bound = sol.metadata.lipschitz_bound.unwrap();
    assert!(bound.is_finite() && bound > 0.0);
    assert_eq!(sol.metadata.step, 1e-4);
}

#[test]
fn narrow_reaction_interval_pools_from_entry() {
    // the lowest receiver gains 1/2 from the pool over the bottom match, more than the interval width
    let m = linear_model(0.0, Some(0.3));
    let sol = assemble_cse(&m, &SolveOptions::default()).unwrap();
    assert_eq!(sol.regime, Regime::Pooling);
    assert!(sol.arc.is_empty());
    let pool = sol.pooled.unwrap();
    assert_eq!(pool.types.lo, 1.0);
    // the lowest type is indifferent between the pool and the null action at the floor
    assert!((pool.action - 0.3).abs() < 1e-12);
    assert_eq!(sol.reaction(pool.action), Some(0.3));
    assert_eq!(point(sol.belief(0.1)), 1.0);
}
