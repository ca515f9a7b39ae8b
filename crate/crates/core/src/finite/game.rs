use crate::error::{Error, Result};
use crate::model::certify::{certify_sender_grid, Certificate};
use crate::scalar::Payoff;

/// A finite signaling game.
///
/// Types, actions and reactions are strictly increasing lists. Utility
/// tables are indexed by `(reaction, action, type)` positions.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGame<P> {
    types: Vec<P>,
    prior: Vec<P>,
    actions: Vec<P>,
    reactions: Vec<P>,
    sender: Vec<P>,
    receiver: Vec<P>,
}

fn strictly_increasing<P: PartialOrd>(v: &[P]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl<P: Payoff> FiniteGame<P> {
    /// Builds a game by tabulating `u(t, s, z)` and `g(t, s, z)`.
    pub fn new(
        types: Vec<P>,
        prior: Vec<P>,
        actions: Vec<P>,
        reactions: Vec<P>,
        u: impl Fn(P, P, P) -> P,
        g: impl Fn(P, P, P) -> P,
    ) -> Result<Self> {
        let mut sender = Vec::with_capacity(reactions.len() * actions.len() * types.len());
        let mut receiver = Vec::with_capacity(sender.capacity());
        for &t in &reactions {
            for &s in &actions {
                for &z in &types {
                    sender.push(u(t, s, z));
                    receiver.push(g(t, s, z));
                }
            }
        }
        Self::from_flat(types, prior, actions, reactions, sender, receiver)
    }

    /// Builds a game from nested tables `table[t][s][z]`.
    pub fn from_tables(
        types: Vec<P>,
        prior: Vec<P>,
        actions: Vec<P>,
        reactions: Vec<P>,
        sender: Vec<Vec<Vec<P>>>,
        receiver: Vec<Vec<Vec<P>>>,
    ) -> Result<Self> {
        let shape_ok = |tab: &Vec<Vec<Vec<P>>>| {
            tab.len() == reactions.len()
                && tab
                    .iter()
                    .all(|r| r.len() == actions.len() && r.iter().all(|a| a.len() == types.len()))
        };
        if !shape_ok(&sender) || !shape_ok(&receiver) {
            return Err(Error::Config(format!(
                "utility tables must have shape [{}][{}][{}]",
                reactions.len(),
                actions.len(),
                types.len()
            )));
        }
        let flat = |tab: Vec<Vec<Vec<P>>>| tab.into_iter().flatten().flatten().collect();
        Self::from_flat(types, prior, actions, reactions, flat(sender), flat(receiver))
    }

    fn from_flat(
        types: Vec<P>,
        prior: Vec<P>,
        actions: Vec<P>,
        reactions: Vec<P>,
        sender: Vec<P>,
        receiver: Vec<P>,
    ) -> Result<Self> {
        for (name, v) in [("types", &types), ("actions", &actions), ("reactions", &reactions)] {
            if v.is_empty() || !strictly_increasing(v) {
                return Err(Error::Config(format!("{name} must be a nonempty strictly increasing list")));
            }
        }
        if prior.len() != types.len() {
            return Err(Error::Config("prior must have one entry per type".into()));
        }
        if prior.iter().any(|p| *p <= P::zero()) {
            return Err(Error::Config("prior entries must be positive".into()));
        }
        let total = prior.iter().fold(P::zero(), |a, &b| a + b);
        if (total - P::one()).abs().to_f64() > 1e-9 {
            return Err(Error::Config(format!("prior sums to {total}, not 1")));
        }
        Ok(FiniteGame {
            types,
            prior,
            actions,
            reactions,
            sender,
            receiver,
        })
    }

    pub fn types(&self) -> &[P] {
        &self.types
    }
    pub fn prior(&self) -> &[P] {
        &self.prior
    }
    pub fn actions(&self) -> &[P] {
        &self.actions
    }
    pub fn reactions(&self) -> &[P] {
        &self.reactions
    }
    pub fn n_types(&self) -> usize {
        self.types.len()
    }
    pub fn n_actions(&self) -> usize {
        self.actions.len()
    }
    pub fn n_reactions(&self) -> usize {
        self.reactions.len()
    }

    #[inline]
    fn idx(&self, t: usize, s: usize, z: usize) -> usize {
        (t * self.actions.len() + s) * self.types.len() + z
    }

    /// Sender utility at positions `(t, s, z)`.
    #[inline]
    pub fn u(&self, t: usize, s: usize, z: usize) -> P {
        self.sender[self.idx(t, s, z)]
    }

    /// Receiver utility at positions `(t, s, z)`.
    #[inline]
    pub fn g(&self, t: usize, s: usize, z: usize) -> P {
        self.receiver[self.idx(t, s, z)]
    }

    /// Receiver's expected utility of reaction `t` after action `s` under `belief`.
    pub fn expected_g(&self, t: usize, s: usize, belief: &[P]) -> P {
        belief
            .iter()
            .enumerate()
            .fold(P::zero(), |acc, (z, &w)| acc + w * self.g(t, s, z))
    }

    /// Certifies the sender utility on the game's own grid.
    ///
    /// Axes with a single point impose no comparisons.
    pub fn sender_certificate(&self) -> Certificate {
        let t_idx: Vec<usize> = (0..self.n_reactions()).collect();
        let s_idx: Vec<usize> = (0..self.n_actions()).collect();
        let z_idx: Vec<usize> = (0..self.n_types()).collect();
        let null = self.actions.iter().position(|a| *a == P::zero());
        certify_sender_grid(
            |t, s, z| self.u(t, s, z),
            &t_idx,
            &s_idx,
            &z_idx,
            |s| Some(s) == null,
            P::slack(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn tabulates_in_reaction_action_type_order() {
        let g = FiniteGame::new(
            vec![r(1, 1), r(2, 1)],
            vec![r(1, 2), r(1, 2)],
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 1), r(2, 1)],
            |t, s, z| t - r(3, 2) * s / z,
            |t, _s, z| -(t - z) * (t - z),
        )
        .unwrap();
        assert_eq!(g.u(1, 1, 0), r(1, 2));
        assert_eq!(g.u(1, 1, 1), r(5, 4));
        assert_eq!(g.g(0, 0, 1), r(-1, 1));
        assert!(g.sender_certificate().passed());
    }

    #[test]
    fn validates_lists_and_prior() {
        let bad = FiniteGame::new(
            vec![2.0, 1.0],
            vec![0.5, 0.5],
            vec![0.0],
            vec![1.0],
            |t, _s, _z| t,
            |t, _s, _z| t,
        );
        assert!(matches!(bad, Err(Error::Config(_))));
        let bad_prior = FiniteGame::new(vec![1.0, 2.0], vec![0.7, 0.7], vec![0.0], vec![1.0], |t, _, _| t, |t, _, _| t);
        assert!(bad_prior.is_err());
    }
}
