use serde::{Deserialize, Serialize};

use crate::cse::entry::EntryCase;
use crate::cse::expectation::conditional_surplus_expectation;
use crate::model::{Certificate, Interval, ModelPrimitives, ReactionInterval};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Separating,
    StrictlyWellBehaved,
    Pooling,
    EmptyMarket,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Onset of pooling at the top.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpThreshold<T> {
    pub z_h: T,
    pub s_h: T,
    pub x_h: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds<T> {
    pub z_ell: T,
    pub s_ell: T,
    pub x_ell: T,
    pub jump: Option<JumpThreshold<T>>,
}

/// Separating part as parallel node arrays, increasing in the action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcTable<T> {
    pub actions: Vec<T>,
    pub beliefs: Vec<T>,
    pub reactions: Vec<T>,
    pub partners: Vec<T>,
}

impl<T> Default for ArcTable<T> {
    fn default() -> Self {
        ArcTable {
            actions: Vec::new(),
            beliefs: Vec::new(),
            reactions: Vec::new(),
            partners: Vec::new(),
        }
    }
}

impl<T: Real> ArcTable<T> {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    fn covers(&self, s: T) -> bool {
        !self.is_empty() && s >= self.actions[0] && s <= self.actions[self.len() - 1]
    }

    /// Index `i` with `keys[i] <= v <= keys[i + 1]` and the weight of `i + 1`.
    fn locate(keys: &[T], v: T) -> (usize, T) {
        let n = keys.len();
        if n == 1 || v <= keys[0] {
            return (0, T::zero());
        }
        if v >= keys[n - 1] {
            return (n - 2, T::one());
        }
        let i = keys.partition_point(|k| *k <= v) - 1;
        let w = keys[i + 1] - keys[i];
        let t = if w > T::zero() { (v - keys[i]) / w } else { T::zero() };
        (i, t)
    }

    fn lerp(vals: &[T], i: usize, t: T) -> T {
        if vals.len() == 1 {
            return vals[0];
        }
        vals[i] + (vals[i + 1] - vals[i]) * t
    }

    pub fn belief_at(&self, s: T) -> T {
        let (i, t) = Self::locate(&self.actions, s);
        Self::lerp(&self.beliefs, i, t)
    }

    pub fn reaction_at(&self, s: T) -> T {
        let (i, t) = Self::locate(&self.actions, s);
        Self::lerp(&self.reactions, i, t)
    }

    pub fn partner_at(&self, s: T) -> T {
        let (i, t) = Self::locate(&self.actions, s);
        Self::lerp(&self.partners, i, t)
    }

    /// Action chosen by sender type `z`, inverting the monotone belief map.
    pub fn action_of(&self, z: T) -> T {
        let (i, t) = Self::locate(&self.beliefs, z);
        Self::lerp(&self.actions, i, t)
    }

    /// Action whose partner is receiver `x`.
    pub fn action_for_partner(&self, x: T) -> T {
        let (i, t) = Self::locate(&self.partners, x);
        Self::lerp(&self.actions, i, t)
    }
}

/// Block of sender types sharing one action, matched to an interval of receivers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PooledBlock<T> {
    pub types: Interval<T>,
    pub action: T,
    pub reaction: T,
    pub receivers: Interval<T>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveMetadata {
    pub entry_case: Option<EntryCase>,
    pub step: f64,
    pub certificates: Vec<Certificate>,
    pub assumptions_waived: bool,
    pub lipschitz_bound: Option<f64>,
    pub notes: Vec<String>,
}

/// Receiver belief after observing an action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BeliefSupport<T> {
    Point(T),
    /// Prior restricted to `[lo, hi]`.
    Interval(T, T),
}

impl<T: Real> BeliefSupport<T> {
    pub fn bounds(&self) -> (T, T) {
        match *self {
            BeliefSupport::Point(z) => (z, z),
            BeliefSupport::Interval(lo, hi) => (lo, hi),
        }
    }
}

/// Receiver side of an action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatchedReceivers<T> {
    One(T),
    Range(T, T),
}

/// Computed stronger-monotone competitive signaling equilibrium.
///
/// Sender types below the entry threshold stay out and are recorded with
/// the null action. Between nodes the separating maps are linear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CseSolution<T> {
    pub regime: Regime,
    pub sender_types: Interval<T>,
    pub receiver_types: Interval<T>,
    pub reactions: ReactionInterval<T>,
    pub thresholds: Option<Thresholds<T>>,
    /// Top reaction of the uncapped separating solution.
    pub tau_top: Option<T>,
    pub arc: ArcTable<T>,
    pub pooled: Option<PooledBlock<T>>,
    pub metadata: SolveMetadata,
}

impl<T: Real> CseSolution<T> {
    pub fn is_empty_market(&self) -> bool {
        self.regime == Regime::EmptyMarket
    }

    /// Lowest entering type, or `None` when nobody enters.
    pub fn entry_type(&self) -> Option<T> {
        self.thresholds.map(|t| t.z_ell)
    }

    fn enters(&self, z: T) -> bool {
        self.thresholds.is_some_and(|t| z >= t.z_ell)
    }

    pub fn sigma(&self, z: T) -> T {
        if !self.enters(z) {
            return T::zero();
        }
        if let Some(p) = &self.pooled {
            if z >= p.types.lo {
                return p.action;
            }
        }
        if self.arc.is_empty() {
            return T::zero();
        }
        self.arc.action_of(z)
    }

    /// On-path action set: the arc span plus the pooled action.
    pub fn on_path(&self, s: T) -> bool {
        if self.is_empty_market() {
            return false;
        }
        let on_arc = if self.regime == Regime::StrictlyWellBehaved {
            self.arc.covers(s) && s < self.arc.actions[self.arc.len() - 1]
        } else {
            self.arc.covers(s)
        };
        on_arc || self.pooled.is_some_and(|p| p.action == s)
    }

    /// Top action taken on the separating arc, or `None` without an arc.
    pub fn arc_top(&self) -> Option<T> {
        self.arc.actions.last().copied()
    }

    pub fn belief(&self, s: T) -> BeliefSupport<T> {
        let zs = self.sender_types;
        let Some(th) = self.thresholds else {
            return if s <= T::zero() {
                BeliefSupport::Interval(zs.lo, zs.hi)
            } else {
                BeliefSupport::Point(zs.hi)
            };
        };
        if s <= T::zero() && th.z_ell > zs.lo {
            return BeliefSupport::Interval(zs.lo, th.z_ell);
        }
        if let Some(p) = &self.pooled {
            if s == p.action {
                return BeliefSupport::Interval(p.types.lo, p.types.hi);
            }
            if s > p.action {
                return BeliefSupport::Point(zs.hi);
            }
        }
        if s < th.s_ell {
            return BeliefSupport::Point(th.z_ell);
        }
        if self.arc.covers(s) {
            return BeliefSupport::Point(self.arc.belief_at(s));
        }
        match (&self.pooled, th.jump) {
            (Some(_), Some(j)) => BeliefSupport::Point(j.z_h),
            _ => BeliefSupport::Point(zs.hi),
        }
    }

    /// Equilibrium reaction at on-path actions, and the cap at or above the
    /// pooled action in the strictly well-behaved regime.
    pub fn reaction(&self, s: T) -> Option<T> {
        if let Some(p) = &self.pooled {
            if s == p.action || (self.regime == Regime::StrictlyWellBehaved && s >= p.action) {
                return Some(p.reaction);
            }
        }
        if self.on_path(s) {
            return Some(self.arc.reaction_at(s));
        }
        None
    }

    pub fn partner(&self, s: T) -> Option<MatchedReceivers<T>> {
        if let Some(p) = &self.pooled {
            if s == p.action {
                return Some(MatchedReceivers::Range(p.receivers.lo, p.receivers.hi));
            }
        }
        if self.on_path(s) {
            return Some(MatchedReceivers::One(self.arc.partner_at(s)));
        }
        None
    }

    /// Equilibrium utility of sender type `z`; zero for types that stay out.
    pub fn sender_utility(&self, m: &ModelPrimitives<T>, z: T) -> T {
        if !self.enters(z) {
            return T::zero();
        }
        let s = self.sigma(z);
        match self.reaction(s) {
            Some(t) => t - m.c(s, z),
            None => T::zero(),
        }
    }

    /// Equilibrium utility of receiver type `x`; zero for receivers left unmatched.
    pub fn receiver_utility(&self, m: &ModelPrimitives<T>, x: T) -> T {
        let Some(th) = self.thresholds else {
            return T::zero();
        };
        if x < th.x_ell {
            return T::zero();
        }
        if let Some(p) = &self.pooled {
            if x >= p.receivers.lo {
                return conditional_surplus_expectation(m, x, p.action, p.types.lo) - p.reaction;
            }
        }
        if self.arc.is_empty() {
            return T::zero();
        }
        let s = self.arc.action_for_partner(x);
        m.v(x, s, self.arc.belief_at(s)) - self.arc.reaction_at(s)
    }

    /// `(z, sigma(z))` on `points` evenly spaced sender types.
    pub fn sigma_table(&self, points: usize) -> Vec<(T, T)> {
        let zs = self.sender_types;
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let z = zs.lo + zs.width() * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
                (z, self.sigma(z))
            })
            .collect()
    }
}
