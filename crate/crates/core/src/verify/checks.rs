use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cse::{BeliefSupport, CseSolution, EntryCase, Regime};
use crate::error::{Error, Result};
use crate::model::{ModelPrimitives, ReactionCap};
use crate::scalar::{lit, Real};
use crate::verify::audit::Audit;
use crate::verify::lipschitz::lipschitz_estimate;

/// Outcome of one audit. `max_residual` is reported even on pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub worst_witness: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub tolerance: f64,
    pub clearing_tolerance: f64,
    pub foc_tolerance: f64,
    pub type_points: usize,
    pub receiver_points: usize,
    pub stability_samples: usize,
    pub clearing_intervals: usize,
    pub offpath_points: usize,
    /// Off-path actions above the top action reach `offpath_reach` times it.
    pub offpath_reach: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: 1e-7,
            clearing_tolerance: 1e-8,
            foc_tolerance: 1e-6,
            type_points: 201,
            receiver_points: 400,
            stability_samples: 100_000,
            clearing_intervals: 100,
            offpath_points: 1000,
            offpath_reach: 2.0,
            seed: 7,
        }
    }
}

/// Running maximum of a residual with the witness that attained it.
struct Worst<T> {
    max: Option<T>,
    witness: Option<String>,
}

impl<T: Real> Worst<T> {
    fn new() -> Self {
        Worst { max: None, witness: None }
    }

    fn observe(&mut self, r: T, witness: impl FnOnce() -> String) {
        let worse = match self.max {
            None => true,
            Some(m) => r > m || (r.is_nan() && !m.is_nan()),
        };
        if worse {
            self.max = Some(r);
            self.witness = Some(witness());
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if let Some(r) = other.max {
            let w = other.witness;
            self.observe(r, || w.unwrap_or_default());
        }
        self
    }

    fn finish(self, name: &str, tolerance: f64) -> CheckRecord {
        let max = self.max.map(|r| r.to_f64().unwrap_or(f64::NAN)).unwrap_or(0.0);
        CheckRecord {
            name: name.into(),
            max_residual: max,
            tolerance,
            worst_witness: self.witness,
            pass: max <= tolerance,
        }
    }
}

fn vacuous(name: &str, tolerance: f64) -> CheckRecord {
    Worst::<f64>::new().finish(name, tolerance)
}

fn evenly<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let n = n.max(2);
    (0..n)
        .map(|i| lo + (hi - lo) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap())
        .collect()
}

fn type_grid<T: Real>(sol: &CseSolution<T>, points: usize) -> Vec<T> {
    let zs = sol.sender_types;
    let mut grid = evenly(zs.lo, zs.hi, points);
    if let Some(th) = sol.thresholds {
        grid.push(th.z_ell);
        if let Some(j) = th.jump {
            grid.push(j.z_h);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid
}

fn cap<T: Real>(sol: &CseSolution<T>) -> T {
    match sol.reactions.hi {
        ReactionCap::Finite(h) => h,
        ReactionCap::Unbounded => T::infinity(),
    }
}

/// On-path actions: every arc node in use plus the pooled action.
fn on_path_actions<T: Real>(sol: &CseSolution<T>) -> Vec<T> {
    let mut out: Vec<T> = sol.arc.actions.iter().copied().filter(|&s| sol.on_path(s)).collect();
    if let Some(p) = &sol.pooled {
        out.push(p.action);
    }
    out
}

pub const SENDER_OPTIMALITY: &str = "sender optimality";
pub const OFFPATH_D1: &str = "off-path deviation (D1 beliefs)";
pub const STABILITY: &str = "stability";
pub const MARKET_CLEARING: &str = "market clearing";
pub const BUNCHING: &str = "bunching structure";
pub const THRESHOLDS: &str = "threshold consistency";
pub const FIRST_ORDER: &str = "first-order conditions";
pub const MONOTONICITY: &str = "monotonicity";
pub const LIPSCHITZ: &str = "belief slope conditioning";
pub const WTP_SHAPE: &str = "willingness-to-pay shape";

/// No sender type gains by switching to another on-path action, and every
/// entrant earns at least the outside option.
pub fn check_sender_optimality<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let actions = on_path_actions(sol);
    let priced: Vec<(T, T)> = actions.iter().filter_map(|&s| sol.reaction(s).map(|t| (s, t))).collect();
    let worst = type_grid(sol, opts.type_points)
        .par_iter()
        .map(|&z| {
            let mut w = Worst::new();
            let u = sol.sender_utility(m, z);
            w.observe(-u, || format!("type {z} earns {u} < 0"));
            for &(s, t) in &priced {
                let gain = t - m.c(s, z) - u;
                w.observe(gain, || format!("type {z} gains {gain} by switching to s = {s}"));
            }
            w
        })
        .reduce(Worst::new, Worst::merge);
    worst.finish(SENDER_OPTIMALITY, opts.tolerance)
}

/// Off-path action grid with the point belief attached to each action.
pub fn offpath_grid<T: Real>(sol: &CseSolution<T>, points: usize, reach: f64) -> Vec<T> {
    let Some(th) = sol.thresholds else {
        return Vec::new();
    };
    let top = match (&sol.pooled, sol.arc_top()) {
        (Some(p), _) => p.action,
        (None, Some(t)) => t,
        (None, None) => T::zero(),
    };
    // (lo, hi, include lo, include hi)
    let mut pieces: Vec<(T, T, bool, bool)> = Vec::new();
    if th.s_ell > T::zero() {
        pieces.push((T::zero(), th.s_ell, false, false));
    }
    if let (Some(p), Some(arc_top), Regime::StrictlyWellBehaved) = (&sol.pooled, sol.arc_top(), sol.regime) {
        pieces.push((arc_top, p.action, true, false));
    }
    let upper = lit::<T>(reach) * top.max(T::one());
    pieces.push((top, upper, false, true));
    let total: T = pieces.iter().fold(T::zero(), |acc, p| acc + (p.1 - p.0));
    let mut out = Vec::with_capacity(points);
    for (lo, hi, incl_lo, incl_hi) in pieces {
        let share = ((hi - lo) / total * T::from_usize(points).unwrap()).round().to_usize().unwrap_or(1).max(1);
        let k = T::from_usize(share).unwrap();
        for i in 0..share {
            let f = T::from_usize(i).unwrap();
            let frac = match (incl_lo, incl_hi) {
                (true, false) => f / k,
                (false, true) => (f + T::one()) / k,
                _ => (f + lit(0.5)) / k,
            };
            out.push(lo + (hi - lo) * frac);
        }
    }
    out
}

/// At each off-path action the type carrying the receivers' belief cannot
/// gain, even at the highest transfer some receiver would accept, capped at
/// the top of the reaction interval.
pub fn check_offpath_deviation_d1<T: Real>(
    sol: &CseSolution<T>,
    m: &ModelPrimitives<T>,
    opts: &VerifyOptions,
) -> Result<CheckRecord> {
    let audit = Audit {
        sol,
        m,
        receiver_points: opts.receiver_points,
    };
    let grid = offpath_grid(sol, opts.offpath_points, opts.offpath_reach);
    let mut points = Vec::with_capacity(grid.len());
    for s in grid.into_iter().filter(|&s| !sol.on_path(s)) {
        match sol.belief(s) {
            BeliefSupport::Point(z) => points.push((s, z)),
            BeliefSupport::Interval(lo, hi) => {
                return Err(Error::Precondition(format!(
                    "off-path action {s} carries a non-degenerate belief on [{lo}, {hi}]"
                )))
            }
        }
    }
    let (t_lo, t_hi) = (sol.reactions.lo, cap(sol));
    let tol = lit::<T>(opts.tolerance);
    let worst = points
        .par_iter()
        .map(|&(s, z)| {
            let mut w = Worst::new();
            let u = audit.sender_payoff(z);
            let (wtp, x) = audit.willingness_to_pay(s, z);
            let gain = if wtp <= t_lo + tol {
                -u
            } else {
                wtp.min(t_hi) - m.c(s, z) - u
            };
            w.observe(gain, || {
                format!("type {z} gains {gain} at off-path s = {s} (receiver {x} pays up to {wtp})")
            });
            w
        })
        .reduce(Worst::new, Worst::merge);
    Ok(worst.finish(OFFPATH_D1, opts.tolerance))
}

/// Additive-recurrence point set in the unit square.
fn r2_point(i: usize) -> (f64, f64) {
    const R2_X: f64 = 0.754_877_666_246_692_7;
    const R2_Y: f64 = 0.569_840_290_998_053_3;
    let k = i as f64 + 1.0;
    ((0.5 + R2_X * k).fract(), (0.5 + R2_Y * k).fract())
}

/// No on-path action and receiver outside its match can both strictly gain
/// at a feasible transfer.
pub fn check_stability<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let actions = on_path_actions(sol);
    if actions.is_empty() || sol.thresholds.is_none() {
        return vacuous(STABILITY, opts.tolerance);
    }
    let audit = Audit {
        sol,
        m,
        receiver_points: opts.receiver_points,
    };
    let xs = sol.receiver_types;
    let t_hi = cap(sol);
    let arc_on: Vec<T> = sol.arc.actions.iter().copied().filter(|&s| sol.on_path(s)).collect();
    let pooled = sol.pooled;
    let pooled_share = match (arc_on.is_empty(), pooled.is_some()) {
        (true, _) => 1.0,
        (false, true) => 0.1,
        (false, false) => 0.0,
    };
    let worst = (0..opts.stability_samples)
        .into_par_iter()
        .map(|i| {
            let (u1, u2) = r2_point(i);
            let s = if u1 < pooled_share {
                pooled.expect("pooled action").action
            } else {
                let f = (u1 - pooled_share) / (1.0 - pooled_share);
                let (lo, hi) = (arc_on[0], arc_on[arc_on.len() - 1]);
                lo + (hi - lo) * lit(f)
            };
            let x = xs.lo + xs.width() * lit(u2);
            let mut w = Worst::new();
            if let Some(t) = sol.reaction(s) {
                let wtp = audit.expected_surplus(x, s) - audit.receiver_payoff(x);
                let block = wtp.min(t_hi) - t;
                w.observe(block, || format!("receiver {x} and action {s} block with surplus {block}"));
            }
            w
        })
        .reduce(Worst::new, Worst::merge);
    worst.finish(STABILITY, opts.tolerance)
}

/// Sender and receiver masses agree on every action set.
pub fn check_market_clearing<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let Some(th) = sol.thresholds else {
        return vacuous(MARKET_CLEARING, opts.clearing_tolerance);
    };
    let mut w = Worst::new();
    let (g, h) = (|z: T| m.sender_cdf(z), |x: T| m.receiver_cdf(x));
    for i in 0..sol.arc.len() {
        let (s, z, x) = (sol.arc.actions[i], sol.arc.beliefs[i], sol.arc.partners[i]);
        let r = (h(x) - g(z)).abs();
        w.observe(r, || format!("at s = {s}: H(m) = {} but G(mu) = {}", h(x), g(z)));
    }
    if let Some(p) = &sol.pooled {
        let gm = g(p.types.hi) - g(p.types.lo);
        let hm = h(p.receivers.hi) - h(p.receivers.lo);
        let r = (gm - hm).abs();
        w.observe(r, || format!("pooled action {}: sender mass {gm}, receiver mass {hm}", p.action));
    }
    let arc_on: Vec<T> = sol.arc.actions.iter().copied().filter(|&s| sol.on_path(s)).collect();
    let arc_hi = sol.arc_top().unwrap_or(T::zero());
    let top = sol.pooled.map(|p| p.action).unwrap_or(arc_hi).max(arc_hi);
    let masses = |a: T, b: T| -> (T, T) {
        let (mut gm, mut hm) = (T::zero(), T::zero());
        if !arc_on.is_empty() {
            let lo = a.max(sol.arc.actions[0]);
            let hi = b.min(arc_hi);
            if lo < hi {
                gm = gm + g(sol.arc.belief_at(hi)) - g(sol.arc.belief_at(lo));
                hm = hm + h(sol.arc.partner_at(hi)) - h(sol.arc.partner_at(lo));
            }
        }
        if let Some(p) = &sol.pooled {
            if a <= p.action && p.action <= b {
                gm = gm + g(p.types.hi) - g(p.types.lo);
                hm = hm + h(p.receivers.hi) - h(p.receivers.lo);
            }
        }
        (gm, hm)
    };
    let (gm, hm) = masses(T::zero(), top);
    let total = T::one() - g(th.z_ell);
    for (label, r) in [("sender", (gm - total).abs()), ("receiver", (hm - (T::one() - h(th.x_ell))).abs())] {
        w.observe(r, || format!("{label} mass of all actions {gm} / {hm} differs from entrants {total}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let span = top * lit(1.1) + lit(1e-3);
    for _ in 0..opts.clearing_intervals {
        let (u1, u2): (f64, f64) = (rng.random(), rng.random());
        let (a, b) = (span * lit(u1.min(u2)), span * lit(u1.max(u2)));
        let (gm, hm) = masses(a, b);
        let r = (gm - hm).abs();
        w.observe(r, || format!("actions [{a}, {b}]: sender mass {gm}, receiver mass {hm}"));
    }
    w.finish(MARKET_CLEARING, opts.clearing_tolerance)
}

/// The pooled types form a terminal interval, receive the pooled reaction
/// exactly, and sit above a genuine jump in the strictly well-behaved regime.
pub fn check_bunching_structure<T: Real>(sol: &CseSolution<T>, opts: &VerifyOptions) -> CheckRecord {
    let Some(p) = sol.pooled else {
        return vacuous(BUNCHING, opts.tolerance);
    };
    let mut w = Worst::new();
    let zs = sol.sender_types;
    w.observe((p.types.hi - zs.hi).abs(), || format!("pooled types end at {} not {}", p.types.hi, zs.hi));
    let xs = sol.receiver_types;
    w.observe((p.receivers.hi - xs.hi).abs(), || {
        format!("pooled receivers end at {} not {}", p.receivers.hi, xs.hi)
    });
    let expected = cap(sol);
    let r = sol.reaction(p.action).map(|t| (t - expected).abs()).unwrap_or(T::infinity());
    w.observe(r, || format!("reaction at the pooled action differs from {expected} by {r}"));
    let mismatches = type_grid(sol, opts.type_points)
        .into_iter()
        .filter(|&z| (sol.sigma(z) == p.action) != (z >= p.types.lo))
        .count();
    w.observe(T::from_usize(mismatches).unwrap(), || {
        format!("{mismatches} grid types disagree with the pooled interval [{}, {}]", p.types.lo, p.types.hi)
    });
    if sol.regime == Regime::StrictlyWellBehaved {
        let arc_top = sol.arc_top().unwrap_or(T::neg_infinity());
        let jump = arc_top - p.action;
        let reaction_gap = sol.arc.reactions.last().copied().unwrap_or(T::neg_infinity()) - expected;
        for (label, r) in [("action", jump), ("reaction", reaction_gap)] {
            if !(r < T::zero()) {
                w.observe(T::infinity(), || format!("no {label} jump into the pool (gap {r})"));
            }
        }
    }
    w.finish(BUNCHING, opts.tolerance)
}

/// Stored thresholds agree with the maps they delimit and with the entry
/// and pooling indifference conditions.
pub fn check_thresholds<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let Some(th) = sol.thresholds else {
        return vacuous(THRESHOLDS, opts.tolerance);
    };
    let mut w = Worst::new();
    let mut gap = |label: &str, a: T, b: T| {
        let r = (a - b).abs();
        w.observe(r, || format!("{label}: {a} vs {b}"));
    };
    let zs = sol.sender_types;
    match m.quantile_match(th.z_ell) {
        Ok(x) => gap("entry partner", th.x_ell, x),
        Err(_) => gap("entry type outside the support", th.z_ell, zs.lo),
    }
    if !sol.arc.is_empty() {
        gap("first arc action", sol.arc.actions[0], th.s_ell);
        gap("first arc belief", sol.arc.beliefs[0], th.z_ell);
        gap("first arc reaction", sol.arc.reactions[0], sol.reactions.lo);
        if sol.pooled.is_none() {
            gap("last arc belief", *sol.arc.beliefs.last().unwrap(), zs.hi);
        }
    }
    if let (Some(j), Some(p)) = (th.jump, sol.pooled) {
        if let Ok(x) = m.quantile_match(j.z_h) {
            gap("pooling partner", j.x_h, x);
        }
        gap("pooled types start", p.types.lo, j.z_h);
        gap("pooled action", p.action, j.s_h);
        gap("pooled receivers start", p.receivers.lo, j.x_h);
        if sol.regime == Regime::StrictlyWellBehaved {
            gap("last arc belief", *sol.arc.beliefs.last().unwrap(), j.z_h);
        }
    }
    let interior = th.z_ell > zs.lo || sol.metadata.entry_case == Some(EntryCase::InteriorEntry);
    if interior {
        let t = sol.reaction(th.s_ell).unwrap_or(T::nan());
        gap("marginal sender surplus", t - m.c(th.s_ell, th.z_ell), T::zero());
        match sol.pooled {
            Some(p) if p.action == th.s_ell => {
                let audit = Audit { sol, m, receiver_points: opts.receiver_points };
                let buyer = audit.restricted_mean(th.x_ell, p.action, p.types.lo, p.types.hi) - t;
                if p.reaction > sol.reactions.lo {
                    // rationed at the cap: the entry partner may keep a surplus
                    gap("marginal receiver deficit", buyer.min(T::zero()), T::zero());
                } else {
                    gap("marginal receiver surplus", buyer, T::zero());
                }
            }
            _ => gap("marginal receiver surplus", m.v(th.x_ell, th.s_ell, th.z_ell) - t, T::zero()),
        }
    }
    w.finish(THRESHOLDS, opts.tolerance)
}

/// Three-point derivative on a non-uniform grid.
fn derivative<T: Real>(xs: &[T], ys: &[T], i: usize) -> T {
    let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
    (-h1 / (h0 * (h0 + h1))) * ys[i - 1] + ((h1 - h0) / (h0 * h1)) * ys[i] + (h0 / (h1 * (h0 + h1))) * ys[i + 1]
}

/// Sender and receiver first-order conditions on the separating interior.
pub fn check_first_order_conditions<T: Real>(
    sol: &CseSolution<T>,
    m: &ModelPrimitives<T>,
    opts: &VerifyOptions,
) -> CheckRecord {
    let arc = &sol.arc;
    if arc.len() < 3 {
        return vacuous(FIRST_ORDER, opts.foc_tolerance);
    }
    let min_gap = lit::<T>(1e-8);
    let worst = (1..arc.len() - 1)
        .into_par_iter()
        .map(|i| {
            let mut w = Worst::new();
            let (s, z, x) = (arc.actions[i], arc.beliefs[i], arc.partners[i]);
            if arc.actions[i] - arc.actions[i - 1] < min_gap || arc.actions[i + 1] - arc.actions[i] < min_gap {
                return w;
            }
            let dt = derivative(&arc.actions, &arc.reactions, i);
            let dmu = derivative(&arc.actions, &arc.beliefs, i);
            let sender = (dt - m.c_s(s, z)).abs();
            w.observe(sender, || format!("sender condition off by {sender} at s = {s}"));
            let receiver = (dt - m.v_s(x, s, z) - m.v_z(x, s, z) * dmu).abs();
            w.observe(receiver, || format!("receiver condition off by {receiver} at s = {s}"));
            w
        })
        .reduce(Worst::new, Worst::merge);
    worst.finish(FIRST_ORDER, opts.foc_tolerance)
}

/// All equilibrium maps and payoff profiles are nondecreasing.
pub fn check_monotonicity<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let mut w = Worst::new();
    let mut drops = |label: &str, keys: &[T], vals: &[T]| {
        for i in 1..vals.len() {
            let r = vals[i - 1] - vals[i];
            w.observe(r, || format!("{label} falls by {r} between {} and {}", keys[i - 1], keys[i]));
        }
    };
    let arc = &sol.arc;
    drops("action grid", &arc.actions, &arc.actions);
    drops("belief", &arc.actions, &arc.beliefs);
    drops("reaction", &arc.actions, &arc.reactions);
    drops("matching", &arc.actions, &arc.partners);
    let types = type_grid(sol, opts.type_points);
    let sigma: Vec<T> = types.iter().map(|&z| sol.sigma(z)).collect();
    drops("sender strategy", &types, &sigma);
    let utility: Vec<T> = types.iter().map(|&z| sol.sender_utility(m, z)).collect();
    drops("sender utility", &types, &utility);
    let audit = Audit { sol, m, receiver_points: opts.receiver_points };
    let receivers = audit.receiver_grid();
    let payoff: Vec<T> = receivers.iter().map(|&x| audit.receiver_payoff(x)).collect();
    drops("receiver utility", &receivers, &payoff);
    w.finish(MONOTONICITY, opts.tolerance)
}

/// Conditioning of the belief slope over the separating rectangle.
pub fn check_lipschitz<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let (Some(lo), Some(hi)) = (sol.arc.actions.first(), sol.arc.actions.last()) else {
        return vacuous(LIPSCHITZ, super::lipschitz::ILL_CONDITIONED);
    };
    let slope = |s: T, z: T| -> Option<T> {
        let x = m.quantile_match(z).ok()?;
        Some(-(m.v_s(x, s, z) - m.c_s(s, z)) / m.v_z(x, s, z))
    };
    let zs = sol.sender_types;
    let est = lipschitz_estimate(slope, (*lo, *hi), (zs.lo, zs.hi), 64.max(opts.type_points / 4));
    let mut w = Worst::new();
    w.observe(est.bound, || format!("largest slope at (s, z) = ({}, {})", est.at.0, est.at.1));
    w.finish(LIPSCHITZ, super::lipschitz::ILL_CONDITIONED)
}

/// Below the pooling partner the highest acceptable transfer rises with
/// the receiver type; among pooled receivers it falls.
pub fn check_wtp_shape<T: Real>(sol: &CseSolution<T>, m: &ModelPrimitives<T>, opts: &VerifyOptions) -> CheckRecord {
    let (Regime::StrictlyWellBehaved, Some(th), Some(p), Some(arc_top)) = (sol.regime, sol.thresholds, sol.pooled, sol.arc_top())
    else {
        return vacuous(WTP_SHAPE, opts.tolerance);
    };
    let Some(j) = th.jump else {
        return vacuous(WTP_SHAPE, opts.tolerance);
    };
    let audit = Audit { sol, m, receiver_points: opts.receiver_points };
    let mut w = Worst::new();
    for s in evenly(arc_top, p.action, 6).into_iter().take(5) {
        let wtp = |x: T| m.v(x, s, j.z_h) - audit.receiver_payoff(x);
        let below = evenly(th.x_ell, j.x_h, 64);
        for pair in below.windows(2) {
            let r = wtp(pair[0]) - wtp(pair[1]);
            w.observe(r, || format!("t(s={s}, .) falls between {} and {}", pair[0], pair[1]));
        }
        let above = evenly(j.x_h, p.receivers.hi, 64);
        for pair in above.windows(2) {
            let r = wtp(pair[1]) - wtp(pair[0]);
            w.observe(r, || format!("T(s={s}, .) rises between {} and {}", pair[0], pair[1]));
        }
    }
    w.finish(WTP_SHAPE, opts.tolerance)
}
