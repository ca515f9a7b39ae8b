use crate::cse::{BeliefSupport, CseSolution};
use crate::model::ModelPrimitives;
use crate::numeric::{gauss_legendre, golden_section_max};
use crate::scalar::{lit, Real};

const PANELS: usize = 16;

/// Payoff evaluations derived only from a candidate solution and the primitives.
pub(crate) struct Audit<'a, T: Real> {
    pub sol: &'a CseSolution<T>,
    pub m: &'a ModelPrimitives<T>,
    pub receiver_points: usize,
}

impl<'a, T: Real> Audit<'a, T> {
    /// Mean of `v(x, s, .)` under the prior restricted to `[lo, hi]`.
    pub fn restricted_mean(&self, x: T, s: T, lo: T, hi: T) -> T {
        let mass = self.m.sender_cdf(hi) - self.m.sender_cdf(lo);
        if !(mass > lit(1e-14)) || hi <= lo {
            return self.m.v(x, s, hi);
        }
        let g = self.m.senders();
        gauss_legendre(|z| self.m.v(x, s, z) * g.pdf(z), lo, hi, PANELS) / mass
    }

    pub fn expected_surplus(&self, x: T, s: T) -> T {
        match self.sol.belief(s) {
            BeliefSupport::Point(z) => self.m.v(x, s, z),
            BeliefSupport::Interval(lo, hi) => self.restricted_mean(x, s, lo, hi),
        }
    }

    pub fn sender_payoff(&self, z: T) -> T {
        self.sol.sender_utility(self.m, z)
    }

    pub fn receiver_payoff(&self, x: T) -> T {
        let sol = self.sol;
        let Some(th) = sol.thresholds else {
            return T::zero();
        };
        if x < th.x_ell {
            return T::zero();
        }
        if let Some(p) = &sol.pooled {
            if x >= p.receivers.lo {
                return self.restricted_mean(x, p.action, p.types.lo, p.types.hi) - p.reaction;
            }
        }
        if sol.arc.is_empty() {
            return T::zero();
        }
        let s = sol.arc.action_for_partner(x);
        self.m.v(x, s, sol.arc.belief_at(s)) - sol.arc.reaction_at(s)
    }

    pub fn receiver_grid(&self) -> Vec<T> {
        let xs = self.m.receiver_types();
        let n = self.receiver_points.max(16);
        let mut grid: Vec<T> = (0..n)
            .map(|i| xs.lo + xs.width() * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap())
            .collect();
        if let Some(th) = self.sol.thresholds {
            grid.push(th.x_ell);
            if let Some(j) = th.jump {
                grid.push(j.x_h);
            }
        }
        grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
        grid
    }

    /// Largest transfer any receiver accepts for action `s` from type `z`
    /// without falling below its equilibrium payoff.
    pub fn willingness_to_pay(&self, s: T, z: T) -> (T, T) {
        let grid = self.receiver_grid();
        let value = |x: T| self.m.v(x, s, z) - self.receiver_payoff(x);
        let (mut best_i, mut best) = (0, T::neg_infinity());
        for (i, &x) in grid.iter().enumerate() {
            let v = value(x);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let lo = grid[best_i.saturating_sub(1)];
        let hi = grid[(best_i + 1).min(grid.len() - 1)];
        let mut arg = grid[best_i];
        if lo < hi {
            let x = golden_section_max(value, lo, hi, lit(1e-12));
            if value(x) > best {
                best = value(x);
                arg = x;
            }
        }
        (best, arg)
    }
}
