//! Grid-based certificates for the structural assumptions on utilities.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::model::primitives::ModelPrimitives;
use crate::scalar::{lit, Payoff, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    Pass,
    Fail,
    /// A limit condition could not be decided along the sampled schedule.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub status: CertStatus,
    /// First violating point, or the reason a limit was undecided.
    pub witness: Option<String>,
}

impl Certificate {
    fn pass(name: &str) -> Self {
        Certificate {
            name: name.into(),
            status: CertStatus::Pass,
            witness: None,
        }
    }

    fn with(name: &str, status: CertStatus, witness: String) -> Self {
        Certificate {
            name: name.into(),
            status,
            witness: Some(witness),
        }
    }

    fn fail(name: &str, witness: String) -> Self {
        Self::with(name, CertStatus::Fail, witness)
    }

    pub fn passed(&self) -> bool {
        self.status == CertStatus::Pass
    }
}

/// Checks that a sender utility `u(t, s, z)` is strictly increasing in `t`,
/// strictly decreasing in `s`, increasing in `z` (weakly at `s = 0`, strictly
/// otherwise), and has strict single crossing in `((t, s); z)`.
///
/// `margin` is the slack for strict inequalities: zero for exact payoffs.
/// Each axis needs at least two points.
pub fn check_sender_monotone_supermodular<T, U>(u: U, ts: &[T], ss: &[T], zs: &[T], margin: T) -> Certificate
where
    T: Payoff,
    U: Fn(T, T, T) -> T,
{
    if ts.len() < 2 || ss.len() < 2 || zs.len() < 2 {
        return Certificate::fail(SENDER_CERT, "grid needs at least two points per axis".into());
    }
    certify_sender_grid(u, ts, ss, zs, |s| s == T::zero(), margin)
}

const SENDER_CERT: &str = "sender monotone-supermodular";

/// Grid engine behind [`check_sender_monotone_supermodular`].
///
/// Coordinates may be values or positions; `is_null` marks the null action,
/// where monotonicity in the type is only required weakly.
pub fn certify_sender_grid<G, P, U, N>(u: U, ts: &[G], ss: &[G], zs: &[G], is_null: N, margin: P) -> Certificate
where
    G: Copy + PartialOrd + Display,
    P: Payoff,
    U: Fn(G, G, G) -> P,
    N: Fn(G) -> bool,
{
    const NAME: &str = SENDER_CERT;
    for &s in ss {
        for &z in zs {
            for (t1, t2) in pairs(ts) {
                if !(u(t2, s, z) - u(t1, s, z) > margin) {
                    return Certificate::fail(NAME, format!("not increasing in t: t={t1} vs {t2} at s={s}, z={z}"));
                }
            }
        }
    }
    for &t in ts {
        for &z in zs {
            for (s1, s2) in pairs(ss) {
                if !(u(t, s1, z) - u(t, s2, z) > margin) {
                    return Certificate::fail(NAME, format!("not decreasing in s: s={s1} vs {s2} at t={t}, z={z}"));
                }
            }
        }
    }
    for &t in ts {
        for &s in ss {
            for (z1, z2) in pairs(zs) {
                let d = u(t, s, z2) - u(t, s, z1);
                let ok = if is_null(s) { d >= -margin } else { d > margin };
                if !ok {
                    return Certificate::fail(NAME, format!("not increasing in z: z={z1} vs {z2} at t={t}, s={s}"));
                }
            }
        }
    }
    let grid: Vec<(G, G)> = ts.iter().flat_map(|&t| ss.iter().map(move |&s| (t, s))).collect();
    for &(t1, s1) in &grid {
        for &(t2, s2) in &grid {
            let higher = t2 >= t1 && s2 >= s1 && (t2 > t1 || s2 > s1);
            if !higher {
                continue;
            }
            for (i, &z1) in zs.iter().enumerate() {
                let d1 = u(t2, s2, z1) - u(t1, s1, z1);
                if d1 < P::zero() {
                    continue;
                }
                for &z2 in &zs[i + 1..] {
                    let d2 = u(t2, s2, z2) - u(t1, s1, z2);
                    if !(d2 > margin) {
                        return Certificate::fail(
                            NAME,
                            format!(
                                "single crossing fails: ({t1},{s1}) -> ({t2},{s2}) gains {d1} at z={z1} but {d2} at z={z2}"
                            ),
                        );
                    }
                }
            }
        }
    }
    Certificate::pass(NAME)
}

/// Sampling plan for [`check_assumptions`].
#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionGrid<T> {
    /// Interior points per type axis.
    pub points: usize,
    /// Actions sampled for shape conditions; must include 0.
    pub actions: Vec<T>,
    /// Decreasing offsets used for limits at zero and at the lowest type.
    pub epsilons: Vec<T>,
    /// Increasing actions used for limits at infinity.
    pub large_actions: Vec<T>,
    /// Magnitude treated as divergence.
    pub blowup: T,
    pub margin: T,
}

impl<T: Real> Default for AssumptionGrid<T> {
    fn default() -> Self {
        AssumptionGrid {
            points: 9,
            actions: [0.0, 0.1, 0.5, 1.0, 2.0, 5.0].iter().map(|&a| lit(a)).collect(),
            epsilons: (1..=12).map(|k| lit(10f64.powi(-k))).collect(),
            large_actions: (1..=10).map(|k| lit(10f64.powi(k))).collect(),
            blowup: lit(1e6),
            margin: lit(1e-10),
        }
    }
}

/// Verdict for a sequence that should diverge: pass once it exceeds the
/// threshold, fail if it has settled, otherwise undecided.
fn divergence<T: Real>(values: &[T], blowup: T) -> CertStatus {
    if values.iter().any(|v| v.abs() >= blowup || v.is_infinite()) {
        return CertStatus::Pass;
    }
    if let [.., a, b] = values {
        if (*b - *a).abs() <= lit::<T>(1e-6) * T::one().max(b.abs()) {
            return CertStatus::Fail;
        }
    }
    CertStatus::Inconclusive
}

/// Verdict for a sequence that should tend to zero.
fn vanishing<T: Real>(values: &[T], blowup: T) -> CertStatus {
    let small = T::one() / blowup.sqrt();
    match values.last() {
        Some(v) if v.abs() <= small => CertStatus::Pass,
        _ => {
            if let [.., a, b] = values {
                if (*b - *a).abs() <= lit::<T>(1e-9) * T::one().max(b.abs()) {
                    return CertStatus::Fail;
                }
            }
            CertStatus::Inconclusive
        }
    }
}

/// Certifies the seven structural assumptions of the continuum market on an
/// interior grid. Limit conditions are evaluated along the grid's schedules.
pub fn check_assumptions<T: Real>(m: &ModelPrimitives<T>, grid: &AssumptionGrid<T>) -> Vec<Certificate> {
    let n = grid.points.max(2);
    let interior = |lo: T, hi: T| -> Vec<T> {
        (0..n)
            .map(|i| lo + (hi - lo) * lit::<T>((i as f64 + 0.5) / n as f64))
            .collect()
    };
    let zr = m.sender_types();
    let xr = m.receiver_types();
    let zs = interior(zr.lo, zr.hi);
    let xs = interior(xr.lo, xr.hi);
    let ss = &grid.actions;
    let eps = grid.margin;
    vec![
        assumption_1(m, &zs, ss, eps),
        assumption_2(m, &xs, &zs, ss, eps),
        assumption_3(m, &xs, &zs, ss, eps),
        assumption_4(m, &zs, grid),
        assumption_5(m, &xs, &zs, grid),
        assumption_6(m, grid),
        assumption_7(m, &xs, &zs, grid),
    ]
}

fn pairs<T: Copy>(v: &[T]) -> impl Iterator<Item = (T, T)> + '_ {
    v.iter()
        .enumerate()
        .flat_map(move |(i, &a)| v[i + 1..].iter().map(move |&b| (a, b)))
}

fn assumption_1<T: Real>(m: &ModelPrimitives<T>, zs: &[T], ss: &[T], eps: T) -> Certificate {
    const NAME: &str = "cost monotone, -c strictly supermodular";
    for &z in zs {
        for (s1, s2) in pairs(ss) {
            if !(m.c(s2, z) - m.c(s1, z) > eps) {
                return Certificate::fail(NAME, format!("c not increasing in s at z={z}, s={s1}->{s2}"));
            }
        }
    }
    for &s in ss {
        for (z1, z2) in pairs(zs) {
            let d = m.c(s, z1) - m.c(s, z2);
            let ok = if s == T::zero() { d >= -eps } else { d > eps };
            if !ok {
                return Certificate::fail(NAME, format!("c not decreasing in z at s={s}, z={z1}->{z2}"));
            }
        }
    }
    for (s1, s2) in pairs(ss) {
        for (z1, z2) in pairs(zs) {
            let lo = m.c(s2, z1) - m.c(s1, z1);
            let hi = m.c(s2, z2) - m.c(s1, z2);
            if !(lo - hi > eps) {
                return Certificate::fail(
                    NAME,
                    format!("-c not strictly supermodular at s={s1}->{s2}, z={z1}->{z2}"),
                );
            }
        }
    }
    Certificate::pass(NAME)
}

fn assumption_2<T: Real>(m: &ModelPrimitives<T>, xs: &[T], zs: &[T], ss: &[T], eps: T) -> Certificate {
    const NAME: &str = "surplus supermodular, increasing in x";
    for &s in ss {
        for (x1, x2) in pairs(xs) {
            for (z1, z2) in pairs(zs) {
                let d = m.v(x2, s, z2) - m.v(x1, s, z2) - m.v(x2, s, z1) + m.v(x1, s, z1);
                if !(d > eps) {
                    return Certificate::fail(
                        NAME,
                        format!("not strictly supermodular in (z,x) at s={s}, x={x1}->{x2}, z={z1}->{z2}"),
                    );
                }
            }
        }
    }
    for &z in zs {
        for (x1, x2) in pairs(xs) {
            for (s1, s2) in pairs(ss) {
                let d = m.v(x2, s2, z) - m.v(x1, s2, z) - m.v(x2, s1, z) + m.v(x1, s1, z);
                if d < -eps {
                    return Certificate::fail(NAME, format!("not supermodular in (x,s) at z={z}"));
                }
            }
        }
    }
    for &x in xs {
        for (z1, z2) in pairs(zs) {
            for (s1, s2) in pairs(ss) {
                let d = m.v(x, s2, z2) - m.v(x, s1, z2) - m.v(x, s2, z1) + m.v(x, s1, z1);
                if d < -eps {
                    return Certificate::fail(NAME, format!("not supermodular in (s,z) at x={x}"));
                }
            }
        }
    }
    for &s in ss {
        for &z in zs {
            for (x1, x2) in pairs(xs) {
                if !(m.v(x2, s, z) - m.v(x1, s, z) > eps) {
                    return Certificate::fail(NAME, format!("v not increasing in x at s={s}, z={z}"));
                }
            }
        }
    }
    Certificate::pass(NAME)
}

fn assumption_3<T: Real>(m: &ModelPrimitives<T>, xs: &[T], zs: &[T], ss: &[T], eps: T) -> Certificate {
    const NAME: &str = "surplus nonnegative, monotone and smooth";
    for &x in xs {
        for &s in ss {
            for &z in zs {
                if m.v(x, s, z) < -eps {
                    return Certificate::fail(NAME, format!("v negative at ({x}, {s}, {z})"));
                }
                let (ds, dz) = (m.v_s(x, s, z), m.v_z(x, s, z));
                if (s > T::zero() && !ds.is_finite()) || !dz.is_finite() {
                    return Certificate::fail(NAME, format!("non-finite partials at ({x}, {s}, {z})"));
                }
            }
            for (z1, z2) in pairs(zs) {
                if !(m.v(x, s, z2) - m.v(x, s, z1) > eps) {
                    return Certificate::fail(NAME, format!("v not increasing in z at x={x}, s={s}"));
                }
            }
        }
        for &z in zs {
            for (s1, s2) in pairs(ss) {
                if m.v(x, s2, z) - m.v(x, s1, z) < -eps {
                    return Certificate::fail(NAME, format!("v decreasing in s at x={x}, z={z}"));
                }
            }
        }
    }
    Certificate::pass(NAME)
}

fn assumption_4<T: Real>(m: &ModelPrimitives<T>, zs: &[T], grid: &AssumptionGrid<T>) -> Certificate {
    const NAME: &str = "cost differentiable, free null action, unbounded";
    let mut status = CertStatus::Pass;
    let mut witness = None;
    for &z in zs {
        if m.c(T::zero(), z).abs() > grid.margin {
            return Certificate::fail(NAME, format!("c(0, {z}) != 0"));
        }
        for &s in &grid.actions {
            if !m.c_s(s, z).is_finite() {
                return Certificate::fail(NAME, format!("c_s not finite at ({s}, {z})"));
            }
        }
        let tail: Vec<T> = grid.large_actions.iter().map(|&s| m.c(s, z)).collect();
        match divergence(&tail, grid.blowup) {
            CertStatus::Pass => {}
            CertStatus::Fail => return Certificate::fail(NAME, format!("c(s, {z}) bounded as s grows")),
            CertStatus::Inconclusive => {
                status = CertStatus::Inconclusive;
                witness = Some(format!("c(s, {z}) below blow-up threshold along schedule"));
            }
        }
    }
    match witness {
        Some(w) => Certificate::with(NAME, status, w),
        None => Certificate::pass(NAME),
    }
}

fn assumption_5<T: Real>(m: &ModelPrimitives<T>, xs: &[T], zs: &[T], grid: &AssumptionGrid<T>) -> Certificate {
    const NAME: &str = "concave returns, convex cost, Inada limits";
    let eps = grid.margin;
    let ss = &grid.actions;
    let flat = xs.iter().all(|&x| {
        zs.iter()
            .all(|&z| ss.iter().all(|&s| (m.v(x, s, z) - m.v(x, T::zero(), z)).abs() <= eps))
    });
    if flat {
        return Certificate::with(NAME, CertStatus::Pass, "vacuous: surplus does not depend on the action".into());
    }
    let mut undecided = None;
    for &x in xs {
        for &z in zs {
            for (s1, s2) in pairs(ss) {
                if !(m.v(x, s2, z) - m.v(x, s1, z) > eps) {
                    return Certificate::fail(NAME, format!("v neither flat nor increasing in s at x={x}, z={z}"));
                }
            }
            for w in ss.windows(3) {
                let (a, b, c) = (w[0], w[1], w[2]);
                let slope_lo = (m.v(x, b, z) - m.v(x, a, z)) / (b - a);
                let slope_hi = (m.v(x, c, z) - m.v(x, b, z)) / (c - b);
                if slope_hi - slope_lo > eps {
                    return Certificate::fail(NAME, format!("v not concave in s at x={x}, z={z}, s={b}"));
                }
                let cl = (m.c(b, z) - m.c(a, z)) / (b - a);
                let ch = (m.c(c, z) - m.c(b, z)) / (c - b);
                if !(ch - cl > eps) {
                    return Certificate::fail(NAME, format!("c not strictly convex in s at z={z}, s={b}"));
                }
            }
            let near: Vec<T> = grid.epsilons.iter().map(|&e| m.v_s(x, e, z)).collect();
            let far: Vec<T> = grid.large_actions.iter().map(|&s| m.v_s(x, s, z)).collect();
            let c_near: Vec<T> = grid.epsilons.iter().map(|&e| m.c_s(e, z)).collect();
            let c_far: Vec<T> = grid.large_actions.iter().map(|&s| m.c_s(s, z)).collect();
            let limits = [
                ("v_s -> inf as s -> 0", divergence(&near, grid.blowup)),
                ("v_s -> 0 as s -> inf", vanishing(&far, grid.blowup)),
                ("c_s -> 0 as s -> 0", vanishing(&c_near, grid.blowup)),
                ("c_s -> inf as s -> inf", divergence(&c_far, grid.blowup)),
            ];
            for (what, st) in limits {
                match st {
                    CertStatus::Fail => return Certificate::fail(NAME, format!("{what} fails at x={x}, z={z}")),
                    CertStatus::Inconclusive => undecided = Some(format!("{what} undecided at x={x}, z={z}")),
                    CertStatus::Pass => {}
                }
            }
        }
    }
    match undecided {
        Some(w) => Certificate::with(NAME, CertStatus::Inconclusive, w),
        None => Certificate::pass(NAME),
    }
}

fn assumption_6<T: Real>(m: &ModelPrimitives<T>, grid: &AssumptionGrid<T>) -> Certificate {
    const NAME: &str = "densities positive and finite";
    let n = grid.points.max(2) * 4;
    for (label, d) in [("sender", m.senders()), ("receiver", m.receivers())] {
        let sup = d.support();
        for i in 0..=n {
            let x = sup.at(lit(i as f64 / n as f64));
            let p = d.pdf(x);
            if !(p.is_finite() && p > T::zero()) {
                return Certificate::fail(NAME, format!("{label} density {p} at {x}"));
            }
        }
    }
    Certificate::pass(NAME)
}

fn assumption_7<T: Real>(m: &ModelPrimitives<T>, xs: &[T], zs: &[T], grid: &AssumptionGrid<T>) -> Certificate {
    const NAME: &str = "cost explodes at the lowest type";
    let z_lo = m.sender_types().lo;
    let x_lo = m.receiver_types().lo;
    let eps = grid.margin;
    let ss = &grid.actions;
    let mut status = CertStatus::Pass;
    let mut witness = None;
    for &s in ss.iter().filter(|&&s| s > T::zero()) {
        let vals: Vec<T> = grid.epsilons.iter().map(|&e| m.c(s, z_lo + e)).collect();
        match divergence(&vals, grid.blowup) {
            CertStatus::Pass => {}
            CertStatus::Fail => {
                let last = *vals.last().expect("nonempty schedule");
                return Certificate::fail(NAME, format!("c({s}, z) stays bounded near the lowest type (-> {last})"));
            }
            CertStatus::Inconclusive => {
                status = CertStatus::Inconclusive;
                witness = Some(format!("c({s}, z) grows near the lowest type but stays below the threshold"));
            }
        }
    }
    let flat_in_s = xs.iter().chain([x_lo].iter()).all(|&x| {
        zs.iter()
            .all(|&z| ss.iter().all(|&s| (m.v(x, s, z) - m.v(x, T::zero(), z)).abs() <= eps))
    });
    let branch_i = flat_in_s
        && zs.iter().all(|&z| ss.iter().all(|&s| m.v(x_lo, s, z).abs() <= eps))
        && xs.iter().all(|&x| zs.iter().all(|&z| ss.iter().all(|&s| m.v(x, s, z) > eps)));
    let branch_ii = xs.iter().all(|&x| {
        zs.iter().all(|&z| {
            m.v(x, T::zero(), z).abs() <= eps
                && pairs(ss).all(|(s1, s2)| m.v(x, s2, z) - m.v(x, s1, z) > eps)
        })
    });
    if !(branch_i || branch_ii) {
        return Certificate::fail(NAME, "surplus satisfies neither structural branch".into());
    }
    match witness {
        Some(w) => Certificate::with(NAME, status, w),
        None => Certificate::pass(NAME),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::distribution::Uniform;
    use crate::model::families::{FnCost, LinearOverType, Multiplicative, PowerCost, RootAction};
    use crate::model::interval::{Interval, ReactionInterval};
    use crate::model::primitives::{Cost, Surplus};
    use crate::Rational;

    fn market(v: Arc<dyn Surplus<f64>>, c: Arc<dyn Cost<f64>>) -> ModelPrimitives<f64> {
        let d = Arc::new(Uniform::new(Interval::new(1.0, 2.0).unwrap()));
        ModelPrimitives::new(v, c, d.clone(), d, ReactionInterval::unbounded(0.0).unwrap()).unwrap()
    }

    #[test]
    fn sender_certifier_examples() {
        let one = [1.0, 2.0];
        let s = [0.0, 1.0];
        assert!(check_sender_monotone_supermodular(|t, s, z| t - s / z, &one, &s, &one, 1e-10).passed());
        assert!(!check_sender_monotone_supermodular(|t, s, _z| t + s, &one, &s, &one, 1e-10).passed());
        let c = check_sender_monotone_supermodular(|t, s, z| t - s * z, &one, &s, &one, 1e-10);
        assert_eq!(c.status, CertStatus::Fail);
        assert!(c.witness.is_some());
    }

    #[test]
    fn sender_certifier_is_exact_on_rationals() {
        let r = |n| Rational::from_integer(n);
        let grid = [r(1), r(2), r(3)];
        let acts = [r(0), r(1), r(2)];
        let cert = check_sender_monotone_supermodular(|t, s, z| t - s / z, &grid, &acts, &grid, r(0));
        assert!(cert.passed());
    }

    #[test]
    fn u_model_fails_only_the_explosion_assumption() {
        let m = market(Arc::new(Multiplicative::new(1.0, 0.0, 0.0)), Arc::new(LinearOverType::new(1.0, 0.0)));
        let certs = check_assumptions(&m, &AssumptionGrid::default());
        for c in &certs[..6] {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(certs[6].status, CertStatus::Fail);
    }

    #[test]
    fn shifted_cost_passes_explosion_limit() {
        let m = market(Arc::new(Multiplicative::new(1.0, 0.0, 1.0)), Arc::new(LinearOverType::new(1.0, 1.0)));
        let certs = check_assumptions(&m, &AssumptionGrid::default());
        assert!(certs[6].passed(), "{:?}", certs[6]);
    }

    #[test]
    fn cost_flat_in_action_fails_first_assumption() {
        let m = market(
            Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
            Arc::new(FnCost::new(|s: f64, _z: f64| if s == 0.0 { 0.0 } else { 0.0 * s })),
        );
        let certs = check_assumptions(&m, &AssumptionGrid::default());
        assert_eq!(certs[0].status, CertStatus::Fail);
    }

    #[test]
    fn productive_action_model_satisfies_inada_conditions() {
        let m = market(
            Arc::new(RootAction { a: 1.0, b: 2.0 }),
            Arc::new(PowerCost { k: 1.0, m: 2.0, r: 1.0 }),
        );
        let certs = check_assumptions(&m, &AssumptionGrid::default());
        assert!(certs[4].passed(), "{:?}", certs[4]);
    }
}
