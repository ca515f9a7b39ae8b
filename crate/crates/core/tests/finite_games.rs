use signal_eq::finite::{
    cho_sobel_monotone, d1_belief_characterization, deviation_dominance_holds, enumerate_pure_pbe, is_stronger_monotone,
    ordering_properties, passes_criterion_d1, random_games, equivalence_report, BeliefGrid, EnumerationOptions,
    FiniteGame, ReactionDomain,
};
use signal_eq::{ExactGame, ExactPbe, Rational};

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn game_a() -> ExactGame {
    FiniteGame::new(
        vec![r(1), r(2)],
        vec![Rational::new(1, 2); 2],
        vec![r(0), r(1)],
        vec![r(1), r(2)],
        |t, s, z| t - Rational::new(3, 2) * s / z,
        |t, _s, z| -(t - z) * (t - z),
    )
    .unwrap()
}

fn pbes(game: &ExactGame) -> Vec<ExactPbe> {
    enumerate_pure_pbe(game, &EnumerationOptions::default()).unwrap()
}

fn find(all: &[ExactPbe], sigma: &[usize], tau: &[usize], off_support: &[usize]) -> ExactPbe {
    all.iter()
        .find(|p| p.sigma == sigma && p.tau == tau && p.support(1) == off_support)
        .cloned()
        .unwrap_or_else(|| panic!("no PBE with sigma {sigma:?}, tau {tau:?}"))
}

#[test]
fn game_a_separating_equilibrium() {
    let g = game_a();
    let all = pbes(&g);
    let sep = find(&all, &[0, 1], &[0, 1], &[1]);
    assert_eq!(sep.utility, vec![r(1), Rational::new(5, 4)]);
    assert!(sep.off_path_actions().is_empty());
    assert!(passes_criterion_d1(&g, &sep, ReactionDomain::Listed).unwrap().passes);
    assert!(is_stronger_monotone(&sep).holds);
}

#[test]
fn game_a_pooling_equilibrium_fails_both_tests() {
    let g = game_a();
    let all = pbes(&g);
    let pool = find(&all, &[0, 0], &[0, 0], &[0]);
    assert_eq!(pool.utility, vec![r(1), r(1)]);
    let d1 = passes_criterion_d1(&g, &pool, ReactionDomain::Listed).unwrap();
    assert!(!d1.passes);
    assert_eq!(d1.witness, Some((1, 0, vec![1])));
    let mono = is_stronger_monotone(&pool);
    assert!(!mono.holds);
    assert!(mono.witness.is_some());
}

#[test]
fn game_a_characterization_points_to_the_top_type() {
    let g = game_a();
    let pool = find(&pbes(&g), &[0, 0], &[0, 0], &[0]);
    for domain in [ReactionDomain::Listed, ReactionDomain::UnboundedQuasilinear] {
        let predicted = d1_belief_characterization(&g, &pool, domain).unwrap();
        assert_eq!(predicted.get(&1), Some(&vec![1]));
    }
}

#[test]
fn game_a_enumeration_is_complete_and_consistent() {
    let g = game_a();
    let all = pbes(&g);
    assert_eq!(all.len(), 7);
    assert!(all.iter().all(|p| p.sender_optimal && p.receiver_optimal));
    assert!(all.iter().all(|p| ordering_properties(p).strategy_nondecreasing));
}

#[test]
fn game_a_equivalence_by_domain() {
    let g = game_a();
    let opts = EnumerationOptions::default();
    let unbounded = equivalence_report(&g, &opts, ReactionDomain::UnboundedQuasilinear).unwrap();
    assert_eq!(unbounded.holds(), Some(true));
    assert_eq!(unbounded.support_classes(), 2);
    // with only two listed reactions, receiver ties leave D1 vacuous at some actions
    let listed = equivalence_report(&g, &opts, ReactionDomain::Listed).unwrap();
    assert_eq!(listed.holds(), Some(false));
    assert_eq!(listed.disagreements().count(), 3);
    assert!(listed.disagreements().all(|v| v.d1 && !v.stronger_monotone));
}

#[test]
fn single_type_game_is_trivially_monotone() {
    let g: ExactGame = FiniteGame::new(
        vec![r(1)],
        vec![r(1)],
        vec![r(0), r(1), r(2)],
        vec![r(0), r(1)],
        |t, s, _z| t - s,
        |t, _s, z| -(t - z) * (t - z),
    )
    .unwrap();
    let all = pbes(&g);
    assert!(!all.is_empty());
    for p in &all {
        assert_eq!(p.sigma, vec![0]);
        assert!(is_stronger_monotone(p).holds);
    }
}

#[test]
fn hypothesis_failure_is_not_asserted() {
    // higher types find the action costlier: single crossing runs the wrong way
    let g: ExactGame = FiniteGame::new(
        vec![r(1), r(2)],
        vec![Rational::new(1, 2); 2],
        vec![r(0), r(1)],
        vec![r(1), r(2)],
        |t, s, z| t - s * z,
        |t, _s, z| -(t - z) * (t - z),
    )
    .unwrap();
    let rep = equivalence_report(&g, &EnumerationOptions::default(), ReactionDomain::Listed).unwrap();
    assert!(!rep.asserted);
    assert_eq!(rep.holds(), None);
}

#[test]
fn face_grid_contains_the_point_mass_equilibria() {
    let g = game_a();
    let coarse = pbes(&g);
    let fine = enumerate_pure_pbe(
        &g,
        &EnumerationOptions {
            belief_grid: BeliefGrid::FaceBarycenters,
            ..EnumerationOptions::default()
        },
    )
    .unwrap();
    for p in &coarse {
        assert!(fine.contains(p));
    }
}

#[test]
fn budget_overflow_is_a_resource_error() {
    let g = game_a();
    let err = enumerate_pure_pbe(
        &g,
        &EnumerationOptions {
            budget: 1,
            ..EnumerationOptions::default()
        },
    )
    .unwrap_err();
    assert!(matches!(err, signal_eq::Error::Resource { .. }), "{err:?}");
}

#[test]
fn random_games_satisfy_ordering_and_dominance() {
    for g in random_games(60, 11, 4) {
        for p in pbes(&g) {
            assert!(ordering_properties(&p).all(), "{p:?}");
            assert!(deviation_dominance_holds(&g, &p, ReactionDomain::UnboundedQuasilinear).unwrap());
            let d1 = passes_criterion_d1(&g, &p, ReactionDomain::UnboundedQuasilinear).unwrap();
            if d1.passes {
                assert!(cho_sobel_monotone(&p).holds, "{p:?}");
            }
        }
    }
}

#[test]
fn random_sweep_is_reproducible() {
    assert_eq!(random_games(5, 7, 4), random_games(5, 7, 4));
    assert_ne!(random_games(5, 7, 4), random_games(5, 8, 4));
}
