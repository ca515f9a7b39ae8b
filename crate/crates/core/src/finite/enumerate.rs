use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finite::game::FiniteGame;
use crate::scalar::Payoff;

/// A pure-strategy perfect Bayesian equilibrium, stored by list positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PurePbe<P> {
    /// Action position chosen by each type.
    pub sigma: Vec<usize>,
    /// Reaction position after each action.
    pub tau: Vec<usize>,
    /// Belief over types after each action.
    pub beliefs: Vec<Vec<P>>,
    /// Equilibrium utility of each type.
    pub utility: Vec<P>,
    /// Every type best-responds to `tau` over all actions.
    pub sender_optimal: bool,
    /// `tau(s)` maximises expected receiver utility under `beliefs[s]` for every action.
    pub receiver_optimal: bool,
}

impl<P: Payoff> PurePbe<P> {
    /// Types with positive belief weight after action `s`.
    pub fn support(&self, s: usize) -> Vec<usize> {
        self.beliefs[s]
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > P::zero())
            .map(|(z, _)| z)
            .collect()
    }

    pub fn on_path(&self, s: usize) -> bool {
        self.sigma.contains(&s)
    }

    pub fn off_path_actions(&self) -> Vec<usize> {
        (0..self.tau.len()).filter(|&s| !self.on_path(s)).collect()
    }
}

/// Candidate beliefs after off-path actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BeliefGrid {
    /// Point masses on each type plus the uniform belief.
    #[default]
    PointMassesAndUniform,
    /// The uniform belief on every nonempty subset of types.
    FaceBarycenters,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    pub belief_grid: BeliefGrid,
    /// All receiver tie selections are enumerated when their count is at most this.
    pub tie_enumeration_cap: usize,
    /// Maximum number of (strategy, off-path belief) candidates.
    pub budget: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            belief_grid: BeliefGrid::PointMassesAndUniform,
            tie_enumeration_cap: 8,
            budget: 50_000_000,
        }
    }
}

fn belief_grid<P: Payoff>(n: usize, grid: BeliefGrid) -> Vec<Vec<P>> {
    let uniform_on = |mask: u32| -> Vec<P> {
        let k = mask.count_ones() as i64;
        (0..n)
            .map(|z| if mask & (1 << z) != 0 { P::from_ratio(1, k) } else { P::zero() })
            .collect()
    };
    match grid {
        BeliefGrid::PointMassesAndUniform => {
            let mut out: Vec<Vec<P>> = (0..n).map(|z| uniform_on(1 << z)).collect();
            if n > 1 {
                out.push(uniform_on((1u32 << n) - 1));
            }
            out
        }
        BeliefGrid::FaceBarycenters => {
            let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            masks.into_iter().map(uniform_on).collect()
        }
    }
}

fn decode_sigma(mut code: usize, n_types: usize, n_actions: usize) -> Vec<usize> {
    let mut sigma = vec![0; n_types];
    for slot in sigma.iter_mut().rev() {
        *slot = code % n_actions;
        code /= n_actions;
    }
    sigma
}

fn best_replies<P: Payoff>(game: &FiniteGame<P>, s: usize, belief: &[P]) -> Vec<usize> {
    let vals: Vec<P> = (0..game.n_reactions()).map(|t| game.expected_g(t, s, belief)).collect();
    let best = vals.iter().copied().fold(vals[0], |m, v| if v > m { v } else { m });
    (0..vals.len()).filter(|&t| P::approx_eq(vals[t], best)).collect()
}

/// Enumerates every pure-strategy PBE over the off-path belief grid.
///
/// On-path beliefs follow Bayes' rule. Receiver ties are resolved towards the
/// lowest reaction; when the number of tie selections is within the cap,
/// every selection is tried. Results are ordered by strategy profile, then by
/// off-path belief, then by tie selection.
pub fn enumerate_pure_pbe<P: Payoff>(game: &FiniteGame<P>, options: &EnumerationOptions) -> Result<Vec<PurePbe<P>>> {
    let nz = game.n_types();
    let ns = game.n_actions();
    if nz > 16 {
        return Err(Error::Resource {
            what: "type count".into(),
            needed: nz as u128,
            budget: 16,
        });
    }
    let grid: Vec<Vec<P>> = belief_grid(nz, options.belief_grid);
    let n_sigma = (ns as u128).checked_pow(nz as u32).unwrap_or(u128::MAX);
    if n_sigma > options.budget {
        return Err(Error::Resource {
            what: "strategy profiles".into(),
            needed: n_sigma,
            budget: options.budget,
        });
    }
    let b = grid.len() as u128;
    let needed = (0..n_sigma as usize).fold(0u128, |acc, code| {
        let sigma = decode_sigma(code, nz, ns);
        let off = (0..ns).filter(|s| !sigma.contains(s)).count() as u32;
        acc.saturating_add(b.checked_pow(off).unwrap_or(u128::MAX))
    });
    if needed > options.budget {
        return Err(Error::Resource {
            what: "strategy and belief candidates".into(),
            needed,
            budget: options.budget,
        });
    }
    let per_sigma: Vec<Vec<PurePbe<P>>> = (0..n_sigma as usize)
        .into_par_iter()
        .map(|code| enumerate_for_sigma(game, &decode_sigma(code, nz, ns), &grid, options))
        .collect();
    Ok(per_sigma.into_iter().flatten().collect())
}

fn enumerate_for_sigma<P: Payoff>(
    game: &FiniteGame<P>,
    sigma: &[usize],
    grid: &[Vec<P>],
    options: &EnumerationOptions,
) -> Vec<PurePbe<P>> {
    let nz = game.n_types();
    let ns = game.n_actions();
    let mut beliefs: Vec<Vec<P>> = vec![Vec::new(); ns];
    let mut off = Vec::new();
    for (s, slot) in beliefs.iter_mut().enumerate() {
        let mass: Vec<P> = (0..nz)
            .map(|z| if sigma[z] == s { game.prior()[z] } else { P::zero() })
            .collect();
        let total = mass.iter().fold(P::zero(), |a, &b| a + b);
        if total > P::zero() {
            *slot = mass.into_iter().map(|w| w / total).collect();
        } else {
            off.push(s);
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; off.len()];
    loop {
        for (k, &s) in off.iter().enumerate() {
            beliefs[s] = grid[choice[k]].clone();
        }
        let replies: Vec<Vec<usize>> = (0..ns).map(|s| best_replies(game, s, &beliefs[s])).collect();
        let selections: usize = replies.iter().map(Vec::len).product();
        let all_ties = selections <= options.tie_enumeration_cap;
        let mut pick = vec![0usize; ns];
        loop {
            let tau: Vec<usize> = (0..ns).map(|s| replies[s][pick[s]]).collect();
            if let Some(pbe) = check_sender(game, sigma, &tau, &beliefs) {
                out.push(pbe);
            }
            if !all_ties || !advance(&mut pick, |s| replies[s].len()) {
                break;
            }
        }
        if !advance(&mut choice, |_| grid.len()) {
            break;
        }
    }
    out
}

/// Odometer increment; returns false after the last combination.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix(i) {
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn check_sender<P: Payoff>(game: &FiniteGame<P>, sigma: &[usize], tau: &[usize], beliefs: &[Vec<P>]) -> Option<PurePbe<P>> {
    let utility: Vec<P> = (0..game.n_types())
        .map(|z| game.u(tau[sigma[z]], sigma[z], z))
        .collect();
    for (z, &u) in utility.iter().enumerate() {
        for (s, &t) in tau.iter().enumerate() {
            if P::strictly_gt(game.u(t, s, z), u) {
                return None;
            }
        }
    }
    Some(PurePbe {
        sigma: sigma.to_vec(),
        tau: tau.to_vec(),
        beliefs: beliefs.to_vec(),
        utility,
        sender_optimal: true,
        receiver_optimal: true,
    })
}
