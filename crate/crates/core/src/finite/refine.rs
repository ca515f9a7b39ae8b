use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finite::enumerate::PurePbe;
use crate::finite::game::FiniteGame;
use crate::model::set_order::stronger_set_leq;
use crate::scalar::Payoff;

/// Reactions against which deviation incentives are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReactionDomain {
    /// Only the game's listed reactions.
    #[default]
    Listed,
    /// Every real transfer, for games whose sender utility is `t - k(s, z)`.
    /// Types are then ranked by the transfer that leaves them indifferent.
    UnboundedQuasilinear,
}

/// Outcome of the D1 test with the first offending action and type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D1Verdict {
    pub passes: bool,
    /// `(action, type, allowed types)` of the first violation.
    pub witness: Option<(usize, usize, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneVerdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl MonotoneVerdict {
    fn ok() -> Self {
        MonotoneVerdict { holds: true, witness: None }
    }
    fn fail(w: String) -> Self {
        MonotoneVerdict {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Cost of action `s` to type `z` when `u(t, s, z) = t - k(s, z)`.
fn quasilinear_cost<P: Payoff>(game: &FiniteGame<P>, s: usize, z: usize) -> Result<P> {
    let k0 = game.reactions()[0] - game.u(0, s, z);
    for t in 1..game.n_reactions() {
        let k = game.reactions()[t] - game.u(t, s, z);
        if !P::approx_eq(k, k0) {
            return Err(Error::Precondition(format!(
                "sender utility is not quasilinear in the reaction at action {s}, type {z}"
            )));
        }
    }
    Ok(k0)
}

/// Types that survive the D1 filter at off-path action `s`.
///
/// Returns `None` when every type is eliminated, in which case the criterion
/// places no restriction on the belief.
pub fn d1_allowed_types<P: Payoff>(
    game: &FiniteGame<P>,
    pbe: &PurePbe<P>,
    s: usize,
    domain: ReactionDomain,
) -> Result<Option<Vec<usize>>> {
    let nz = game.n_types();
    match domain {
        ReactionDomain::Listed => {
            let weak: Vec<Vec<bool>> = (0..nz)
                .map(|z| {
                    (0..game.n_reactions())
                        .map(|t| P::weakly_ge(game.u(t, s, z), pbe.utility[z]))
                        .collect()
                })
                .collect();
            let strict: Vec<Vec<bool>> = (0..nz)
                .map(|z| {
                    (0..game.n_reactions())
                        .map(|t| P::strictly_gt(game.u(t, s, z), pbe.utility[z]))
                        .collect()
                })
                .collect();
            let dominated = |z: usize| {
                (0..nz).any(|w| {
                    w != z && (0..game.n_reactions()).all(|t| !weak[z][t] || strict[w][t])
                })
            };
            let allowed: Vec<usize> = (0..nz).filter(|&z| !dominated(z)).collect();
            Ok(if allowed.is_empty() { None } else { Some(allowed) })
        }
        ReactionDomain::UnboundedQuasilinear => {
            let thresholds = (0..nz)
                .map(|z| Ok(pbe.utility[z] + quasilinear_cost(game, s, z)?))
                .collect::<Result<Vec<P>>>()?;
            let least = thresholds
                .iter()
                .copied()
                .fold(thresholds[0], |m, v| if v < m { v } else { m });
            Ok(Some((0..nz).filter(|&z| P::approx_eq(thresholds[z], least)).collect()))
        }
    }
}

/// Criterion D1: at every off-path action the belief's support must lie in
/// the set of types not dominated in their willingness to deviate.
pub fn passes_criterion_d1<P: Payoff>(game: &FiniteGame<P>, pbe: &PurePbe<P>, domain: ReactionDomain) -> Result<D1Verdict> {
    for s in pbe.off_path_actions() {
        if let Some(allowed) = d1_allowed_types(game, pbe, s, domain)? {
            if let Some(&z) = pbe.support(s).iter().find(|z| !allowed.contains(z)) {
                return Ok(D1Verdict {
                    passes: false,
                    witness: Some((s, z, allowed)),
                });
            }
        }
    }
    Ok(D1Verdict {
        passes: true,
        witness: None,
    })
}

/// Strategy, reaction and belief supports all nondecreasing in the stronger set order.
pub fn is_stronger_monotone<P: Payoff>(pbe: &PurePbe<P>) -> MonotoneVerdict {
    if let Some(z) = (1..pbe.sigma.len()).find(|&z| pbe.sigma[z - 1] > pbe.sigma[z]) {
        return MonotoneVerdict::fail(format!("strategy decreases between types {} and {z}", z - 1));
    }
    if let Some(s) = (1..pbe.tau.len()).find(|&s| pbe.tau[s - 1] > pbe.tau[s]) {
        return MonotoneVerdict::fail(format!("reaction decreases between actions {} and {s}", s - 1));
    }
    let supports: Vec<Vec<usize>> = (0..pbe.tau.len()).map(|s| pbe.support(s)).collect();
    for lo in 0..supports.len() {
        for hi in lo + 1..supports.len() {
            if !stronger_set_leq(&supports[lo], &supports[hi]).unwrap_or(false) {
                return MonotoneVerdict::fail(format!(
                    "belief support {:?} after action {lo} not completely below {:?} after action {hi}",
                    supports[lo], supports[hi]
                ));
            }
        }
    }
    MonotoneVerdict::ok()
}

/// Conclusions that hold for every PBE when the sender utility is
/// monotone-supermodular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderingProperties {
    /// Distinct on-path actions receive strictly increasing reactions.
    pub reaction_increasing_on_path: bool,
    pub strategy_nondecreasing: bool,
    /// On-path belief supports are completely ordered.
    pub on_path_supports_ordered: bool,
}

impl OrderingProperties {
    pub fn all(&self) -> bool {
        self.reaction_increasing_on_path && self.strategy_nondecreasing && self.on_path_supports_ordered
    }
}

pub fn ordering_properties<P: Payoff>(pbe: &PurePbe<P>) -> OrderingProperties {
    let on_path: Vec<usize> = (0..pbe.tau.len()).filter(|&s| pbe.on_path(s)).collect();
    let reaction_increasing_on_path = on_path.windows(2).all(|w| pbe.tau[w[0]] < pbe.tau[w[1]]);
    let strategy_nondecreasing = pbe.sigma.windows(2).all(|w| w[0] <= w[1]);
    let on_path_supports_ordered = on_path
        .windows(2)
        .all(|w| stronger_set_leq(&pbe.support(w[0]), &pbe.support(w[1])).unwrap_or(false));
    OrderingProperties {
        reaction_increasing_on_path,
        strategy_nondecreasing,
        on_path_supports_ordered,
    }
}

/// Off-path actions above an action chosen by type `z` are never attributed
/// to types below `z`.
pub fn cho_sobel_monotone<P: Payoff>(pbe: &PurePbe<P>) -> MonotoneVerdict {
    for s_off in pbe.off_path_actions() {
        let support = pbe.support(s_off);
        let floor = (0..pbe.sigma.len()).filter(|&z| pbe.sigma[z] < s_off).max();
        if let (Some(floor), Some(&lowest)) = (floor, support.iter().min()) {
            if lowest < floor {
                return MonotoneVerdict::fail(format!(
                    "action {s_off} attributed to type {lowest} below type {floor}, who chooses a lower action"
                ));
            }
        }
    }
    MonotoneVerdict::ok()
}

/// When the D1 filter leaves a single type at an off-path action, any
/// reaction that leaves that type weakly worse off from deviating leaves
/// every other type strictly worse off.
pub fn deviation_dominance_holds<P: Payoff>(game: &FiniteGame<P>, pbe: &PurePbe<P>, domain: ReactionDomain) -> Result<bool> {
    for s in pbe.off_path_actions() {
        let Some(allowed) = d1_allowed_types(game, pbe, s, domain)? else {
            continue;
        };
        let [star] = allowed[..] else {
            continue;
        };
        for t in 0..game.n_reactions() {
            if !P::weakly_ge(pbe.utility[star], game.u(t, s, star)) {
                continue;
            }
            let others_lose = (0..game.n_types())
                .filter(|&z| z != star)
                .all(|z| P::strictly_gt(pbe.utility[z], game.u(t, s, z)));
            if !others_lose {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Predicted D1 belief support at each off-path action of a PBE with a
/// nondecreasing strategy: the top type above the highest action, the bottom
/// type below the lowest, and the types on either side of a gap in between.
///
/// Where the D1 filter yields a single type it must lie in the prediction and
/// is returned; otherwise the prediction is returned as is.
pub fn d1_belief_characterization<P: Payoff>(
    game: &FiniteGame<P>,
    pbe: &PurePbe<P>,
    domain: ReactionDomain,
) -> Result<BTreeMap<usize, Vec<usize>>> {
    let cert = game.sender_certificate();
    if !cert.passed() {
        return Err(Error::Precondition(format!(
            "sender utility not monotone-supermodular: {}",
            cert.witness.unwrap_or_default()
        )));
    }
    if pbe.sigma.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("strategy is not nondecreasing".into()));
    }
    let top = pbe.sigma.len() - 1;
    let mut out = BTreeMap::new();
    for s in pbe.off_path_actions() {
        let predicted = if s > pbe.sigma[top] {
            vec![top]
        } else if s < pbe.sigma[0] {
            vec![0]
        } else {
            let i = (0..top)
                .find(|&i| pbe.sigma[i] < s && s < pbe.sigma[i + 1])
                .expect("off-path action inside the range lies in a gap");
            vec![i, i + 1]
        };
        let chosen = match d1_allowed_types(game, pbe, s, domain)? {
            Some(filter) if filter.len() == 1 => {
                if !predicted.contains(&filter[0]) {
                    return Err(Error::Consistency(format!(
                        "D1 filter keeps type {} at action {s}, outside the predicted support {predicted:?}",
                        filter[0]
                    )));
                }
                filter
            }
            _ => predicted,
        };
        out.insert(s, chosen);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::enumerate::{enumerate_pure_pbe, EnumerationOptions};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn game_a() -> FiniteGame<Rational> {
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

    fn pooling_low_belief(g: &FiniteGame<Rational>) -> PurePbe<Rational> {
        enumerate_pure_pbe(g, &EnumerationOptions::default())
            .unwrap()
            .into_iter()
            .find(|p| p.sigma == vec![0, 0] && p.tau == vec![0, 0] && p.support(1) == vec![0])
            .unwrap()
    }

    #[test]
    fn pooling_with_low_belief_fails_d1() {
        let g = game_a();
        let p = pooling_low_belief(&g);
        for domain in [ReactionDomain::Listed, ReactionDomain::UnboundedQuasilinear] {
            let v = passes_criterion_d1(&g, &p, domain).unwrap();
            assert!(!v.passes);
            assert_eq!(v.witness, Some((1, 0, vec![1])));
        }
        let m = is_stronger_monotone(&p);
        assert!(!m.holds);
        assert!(m.witness.unwrap().contains("belief support"));
    }

    #[test]
    fn separating_equilibrium_passes_everything() {
        let g = game_a();
        let pbes = enumerate_pure_pbe(&g, &EnumerationOptions::default()).unwrap();
        let sep = pbes.iter().find(|p| p.sigma == vec![0, 1]).unwrap();
        assert!(passes_criterion_d1(&g, sep, ReactionDomain::Listed).unwrap().passes);
        assert!(is_stronger_monotone(sep).holds);
        assert!(d1_belief_characterization(&g, sep, ReactionDomain::Listed).unwrap().is_empty());
    }

    #[test]
    fn high_belief_cannot_sustain_low_reaction_pooling() {
        let g = game_a();
        let pbes = enumerate_pure_pbe(&g, &EnumerationOptions::default()).unwrap();
        assert!(!pbes
            .iter()
            .any(|p| p.sigma == vec![0, 0] && p.tau[0] == 0 && p.support(1) == vec![1]));
    }

    #[test]
    fn characterization_picks_the_top_type_above_the_pool() {
        let g = game_a();
        let p = pooling_low_belief(&g);
        let c = d1_belief_characterization(&g, &p, ReactionDomain::Listed).unwrap();
        assert_eq!(c.get(&1), Some(&vec![1]));
    }

    #[test]
    fn characterization_below_lowest_action() {
        // every type pools on the middle action; the low action is off path
        let g = FiniteGame::new(
            vec![r(1), r(2)],
            vec![Rational::new(1, 2); 2],
            vec![r(0), r(1), r(2)],
            vec![r(0), r(1), r(2)],
            |t, s, z| t - s / z,
            |t, s, z| -(t - z - s) * (t - z - s),
        )
        .unwrap();
        let pbe = PurePbe {
            sigma: vec![1, 1],
            tau: vec![0, 2, 2],
            beliefs: vec![vec![r(1), r(0)], vec![Rational::new(1, 2); 2], vec![r(0), r(1)]],
            utility: vec![r(1), Rational::new(3, 2)],
            sender_optimal: true,
            receiver_optimal: true,
        };
        let c = d1_belief_characterization(&g, &pbe, ReactionDomain::UnboundedQuasilinear).unwrap();
        assert_eq!(c.get(&0), Some(&vec![0]));
    }

    #[test]
    fn non_quasilinear_utility_rejects_unbounded_domain() {
        let g = FiniteGame::new(
            vec![r(1), r(2)],
            vec![Rational::new(1, 2); 2],
            vec![r(0), r(1)],
            vec![r(1), r(2)],
            |t, s, z| t * t - s / z,
            |t, _s, z| -(t - z) * (t - z),
        )
        .unwrap();
        let p = enumerate_pure_pbe(&g, &EnumerationOptions::default())
            .unwrap()
            .into_iter()
            .find(|p| !p.off_path_actions().is_empty())
            .unwrap();
        assert!(matches!(
            passes_criterion_d1(&g, &p, ReactionDomain::UnboundedQuasilinear),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ordering_properties_hold_in_game_a() {
        let g = game_a();
        for p in enumerate_pure_pbe(&g, &EnumerationOptions::default()).unwrap() {
            assert!(ordering_properties(&p).all());
        }
    }
}
