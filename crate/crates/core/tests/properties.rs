mod common;

use common::linear_model;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use signal_eq::cse::{assemble_cse, BeliefSupport, Regime, SolveOptions};
use signal_eq::finite::{
    d1_belief_characterization, enumerate_pure_pbe, ordering_properties, passes_criterion_d1, random_game,
    EnumerationOptions, ReactionDomain,
};
use signal_eq::io::parse_rational;
use signal_eq::model::{compare_sets, strong_set_leq, stronger_set_leq, SetOrderComparison};
use signal_eq::Rational;

fn small_set() -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::btree_set(-5i32..5, 1..5).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn stronger_order_implies_strong_order(a in small_set(), b in small_set()) {
        if stronger_set_leq(&a, &b).unwrap() {
            prop_assert!(strong_set_leq(&a, &b).unwrap());
        }
    }

    #[test]
    fn stronger_order_is_pointwise(a in small_set(), b in small_set()) {
        let pointwise = a.iter().all(|x| b.iter().all(|y| x <= y));
        prop_assert_eq!(stronger_set_leq(&a, &b).unwrap(), pointwise);
    }

    #[test]
    fn strong_order_is_reflexive_on_intervals(lo in -5i32..5, len in 0i32..4) {
        let a: Vec<i32> = (lo..=lo + len).collect();
        prop_assert!(strong_set_leq(&a, &a).unwrap());
        prop_assert_eq!(compare_sets(&a, &a).unwrap(), SetOrderComparison::Equal);
    }

    #[test]
    fn rationals_print_and_parse_back(n in -1000i64..1000, d in 1i64..50) {
        let q = Rational::new(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn equilibria_are_monotone_and_clear_the_market(cap in 0.3f64..3.0, floor in 0.0f64..0.3) {
        let m = linear_model(floor, Some(cap.max(floor)));
        let sol = assemble_cse(&m, &SolveOptions::with_step(2e-4)).unwrap();
        prop_assert!(sol.regime != Regime::EmptyMarket);

        let arc = &sol.arc;
        prop_assert!(arc.actions.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(arc.beliefs.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(arc.reactions.windows(2).all(|w| w[0] <= w[1]));
        let zs: Vec<f64> = (0..=100).map(|i| 1.0 + i as f64 / 100.0).collect();
        prop_assert!(zs.windows(2).all(|w| sol.sigma(w[0]) <= sol.sigma(w[1])));

        // uniform marginals on equal supports: clearing forces the partner to equal the belief
        for (z, x) in arc.beliefs.iter().zip(&arc.partners) {
            prop_assert!((z - x).abs() < 1e-12);
        }
        if let Some(p) = sol.pooled {
            prop_assert!(((p.types.hi - p.types.lo) - (p.receivers.hi - p.receivers.lo)).abs() < 1e-8);
            prop_assert_eq!(p.reaction, m.reactions().cap().unwrap());
            prop_assert_eq!(sol.regime == Regime::Pooling, arc.is_empty());
            prop_assert_eq!(sol.belief(p.action), BeliefSupport::Interval(p.types.lo, p.types.hi));
        }
    }

    #[test]
    fn on_path_beliefs_invert_the_strategy(cap in 0.5f64..3.0) {
        let m = linear_model(0.0, Some(cap));
        let sol = assemble_cse(&m, &SolveOptions::with_step(2e-4)).unwrap();
        let z_top = sol.pooled.map_or(2.0, |p| p.types.lo);
        for i in 0..=40 {
            let z = 1.0 + (z_top - 1.0) * i as f64 / 40.0;
            let s = sol.sigma(z);
            if sol.on_path(s) && sol.pooled.is_none_or(|p| p.action != s) {
                let BeliefSupport::Point(back) = sol.belief(s) else {
                    return Err(TestCaseError::fail("arc belief should be a point"));
                };
                prop_assert!((back - z).abs() < 1e-6, "z {} -> s {} -> {}", z, s, back);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_games_obey_equilibrium_conditions(seed in any::<u64>()) {
        let game = random_game(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        for p in enumerate_pure_pbe(&game, &EnumerationOptions::default()).unwrap() {
            prop_assert!(p.sender_optimal && p.receiver_optimal);
            for s in 0..game.n_actions() {
                let total: Rational = p.beliefs[s].iter().copied().sum();
                prop_assert_eq!(total, Rational::from_integer(1));
            }
            // Bayes' rule on path
            for s in (0..game.n_actions()).filter(|&s| p.on_path(s)) {
                let mass: Rational = (0..game.n_types()).filter(|&z| p.sigma[z] == s).map(|z| game.prior()[z]).sum();
                for z in 0..game.n_types() {
                    let expected = if p.sigma[z] == s { game.prior()[z] / mass } else { Rational::from_integer(0) };
                    prop_assert_eq!(p.beliefs[s][z], expected);
                }
            }
            prop_assert!(ordering_properties(&p).all());
        }
    }

    #[test]
    fn d1_supports_match_the_characterization(seed in any::<u64>()) {
        let game = random_game(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let domain = ReactionDomain::UnboundedQuasilinear;
        for p in enumerate_pure_pbe(&game, &EnumerationOptions::default()).unwrap() {
            if !passes_criterion_d1(&game, &p, domain).unwrap().passes {
                continue;
            }
            let predicted = d1_belief_characterization(&game, &p, domain).unwrap();
            for (s, support) in predicted {
                if support.len() == 1 {
                    prop_assert_eq!(p.support(s), support);
                }
            }
        }
    }
}
