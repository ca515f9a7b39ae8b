use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::distribution::Distribution;
use crate::model::interval::{Interval, ReactionInterval};
use crate::scalar::{lit, Real};

/// Match surplus `v(x, s, z)` a receiver of type `x` gets from a sender of
/// type `z` taking action `s`, before the transfer.
///
/// Partial derivatives are optional; missing ones are replaced by finite
/// differences in [`ModelPrimitives`].
pub trait Surplus<T>: Send + Sync {
    fn value(&self, x: T, s: T, z: T) -> T;
    fn d_x(&self, _x: T, _s: T, _z: T) -> Option<T> {
        None
    }
    fn d_s(&self, _x: T, _s: T, _z: T) -> Option<T> {
        None
    }
    fn d_z(&self, _x: T, _s: T, _z: T) -> Option<T> {
        None
    }
}

/// Sender cost `c(s, z)` with `c(0, z) = 0`.
pub trait Cost<T>: Send + Sync {
    fn value(&self, s: T, z: T) -> T;
    fn d_s(&self, _s: T, _z: T) -> Option<T> {
        None
    }
    fn d_z(&self, _s: T, _z: T) -> Option<T> {
        None
    }
}

/// The continuum matching market: surplus, cost, type distributions and the
/// feasible reaction interval. The null action is `0`.
///
/// Immutable after construction and cheap to clone.
#[derive(Clone)]
pub struct ModelPrimitives<T: Real> {
    surplus: Arc<dyn Surplus<T>>,
    cost: Arc<dyn Cost<T>>,
    senders: Arc<dyn Distribution<T>>,
    receivers: Arc<dyn Distribution<T>>,
    reactions: ReactionInterval<T>,
}

impl<T: Real> fmt::Debug for ModelPrimitives<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelPrimitives")
            .field("senders", &self.senders)
            .field("receivers", &self.receivers)
            .field("reactions", &self.reactions)
            .finish_non_exhaustive()
    }
}

/// Sample actions used to cross-check supplied derivatives.
const DERIVATIVE_PROBE_ACTIONS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
const DERIVATIVE_REL_TOL: f64 = 1e-4;

#[derive(Clone, Copy)]
enum Axis {
    X,
    S,
    Z,
}

impl<T: Real> ModelPrimitives<T> {
    /// Validates and assembles the primitives.
    ///
    /// Checks CDF boundary values, strictly positive finite densities,
    /// `c(0, z) = 0`, and agreement of supplied derivatives with finite
    /// differences.
    pub fn new(
        surplus: Arc<dyn Surplus<T>>,
        cost: Arc<dyn Cost<T>>,
        senders: Arc<dyn Distribution<T>>,
        receivers: Arc<dyn Distribution<T>>,
        reactions: ReactionInterval<T>,
    ) -> Result<Self> {
        let prims = ModelPrimitives {
            surplus,
            cost,
            senders,
            receivers,
            reactions,
        };
        prims.validate()?;
        Ok(prims)
    }

    /// Same market with a different reaction interval.
    pub fn with_reactions(&self, reactions: ReactionInterval<T>) -> Self {
        ModelPrimitives {
            reactions,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<()> {
        let boundary_tol = lit::<T>(1e-12);
        for (name, d) in [("sender", &self.senders), ("receiver", &self.receivers)] {
            let sup = d.support();
            Interval::new(sup.lo, sup.hi)?;
            if d.cdf(sup.lo).abs() > boundary_tol || (d.cdf(sup.hi) - T::one()).abs() > boundary_tol {
                return Err(Error::Model(format!(
                    "{name} CDF must be 0 at {} and 1 at {}",
                    sup.lo, sup.hi
                )));
            }
            for i in 0..=64 {
                let x = sup.at(lit::<T>(i as f64 / 64.0));
                let p = d.pdf(x);
                if !(p.is_finite() && p > T::zero()) {
                    return Err(Error::Model(format!(
                        "{name} density must be positive and finite; got {p} at {x}"
                    )));
                }
            }
        }
        let zs = self.sender_types();
        for i in 0..=16 {
            let z = zs.at(lit::<T>(i as f64 / 16.0));
            let c0 = self.cost.value(T::zero(), z);
            if c0.abs() > boundary_tol {
                return Err(Error::Model(format!("null action must be free: c(0, {z}) = {c0}")));
            }
        }
        self.cross_check_derivatives()
    }

    fn cross_check_derivatives(&self) -> Result<()> {
        let zs = self.sender_types();
        let xs = self.receiver_types();
        let tol = lit::<T>(DERIVATIVE_REL_TOL);
        for fz in [0.25, 0.5, 0.75] {
            let z = zs.at(lit(fz));
            for fx in [0.25, 0.5, 0.75] {
                let x = xs.at(lit(fx));
                for &s in &DERIVATIVE_PROBE_ACTIONS {
                    let s = lit::<T>(s);
                    let checks = [
                        ("v_x", self.surplus.d_x(x, s, z), self.fd_surplus(Axis::X, x, s, z)),
                        ("v_s", self.surplus.d_s(x, s, z), self.fd_surplus(Axis::S, x, s, z)),
                        ("v_z", self.surplus.d_z(x, s, z), self.fd_surplus(Axis::Z, x, s, z)),
                        ("c_s", self.cost.d_s(s, z), self.fd_cost(Axis::S, s, z)),
                        ("c_z", self.cost.d_z(s, z), self.fd_cost(Axis::Z, s, z)),
                    ];
                    for (name, supplied, numeric) in checks {
                        if let Some(d) = supplied {
                            if (d - numeric).abs() > tol * T::one().max(numeric.abs()) {
                                return Err(Error::Model(format!(
                                    "supplied {name} = {d} disagrees with finite difference {numeric} at (x={x}, s={s}, z={z})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn fd_step(a: T) -> T {
        let base = lit::<T>(1e-6).max(T::epsilon().cbrt());
        base * T::one().max(a.abs())
    }

    /// Central difference, or a one-sided second-order formula when the
    /// central stencil would leave `[lo, hi]`.
    fn fd<F: Fn(T) -> T>(f: F, a: T, lo: T, hi: Option<T>) -> T {
        let h = Self::fd_step(a);
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let four = lit::<T>(4.0);
        if a - h < lo {
            return (-three * f(a) + four * f(a + h) - f(a + two * h)) / (two * h);
        }
        if let Some(hi) = hi {
            if a + h > hi {
                return (three * f(a) - four * f(a - h) + f(a - two * h)) / (two * h);
            }
        }
        (f(a + h) - f(a - h)) / (two * h)
    }

    fn fd_surplus(&self, axis: Axis, x: T, s: T, z: T) -> T {
        let v = &self.surplus;
        let xs = self.receiver_types();
        let zs = self.sender_types();
        match axis {
            Axis::X => Self::fd(|a| v.value(a, s, z), x, xs.lo, Some(xs.hi)),
            Axis::S => Self::fd(|a| v.value(x, a, z), s, T::zero(), None),
            Axis::Z => Self::fd(|a| v.value(x, s, a), z, zs.lo, Some(zs.hi)),
        }
    }

    fn fd_cost(&self, axis: Axis, s: T, z: T) -> T {
        let c = &self.cost;
        let zs = self.sender_types();
        match axis {
            Axis::S => Self::fd(|a| c.value(a, z), s, T::zero(), None),
            Axis::Z => Self::fd(|a| c.value(s, a), z, zs.lo, Some(zs.hi)),
            Axis::X => unreachable!("cost does not depend on the receiver type"),
        }
    }

    pub fn sender_types(&self) -> Interval<T> {
        self.senders.support()
    }

    pub fn receiver_types(&self) -> Interval<T> {
        self.receivers.support()
    }

    pub fn reactions(&self) -> ReactionInterval<T> {
        self.reactions
    }

    pub fn senders(&self) -> &dyn Distribution<T> {
        self.senders.as_ref()
    }

    pub fn receivers(&self) -> &dyn Distribution<T> {
        self.receivers.as_ref()
    }

    pub fn v(&self, x: T, s: T, z: T) -> T {
        self.surplus.value(x, s, z)
    }

    pub fn v_x(&self, x: T, s: T, z: T) -> T {
        self.surplus
            .d_x(x, s, z)
            .unwrap_or_else(|| self.fd_surplus(Axis::X, x, s, z))
    }

    pub fn v_s(&self, x: T, s: T, z: T) -> T {
        self.surplus
            .d_s(x, s, z)
            .unwrap_or_else(|| self.fd_surplus(Axis::S, x, s, z))
    }

    pub fn v_z(&self, x: T, s: T, z: T) -> T {
        self.surplus
            .d_z(x, s, z)
            .unwrap_or_else(|| self.fd_surplus(Axis::Z, x, s, z))
    }

    pub fn c(&self, s: T, z: T) -> T {
        self.cost.value(s, z)
    }

    pub fn c_s(&self, s: T, z: T) -> T {
        self.cost.d_s(s, z).unwrap_or_else(|| self.fd_cost(Axis::S, s, z))
    }

    pub fn c_z(&self, s: T, z: T) -> T {
        self.cost.d_z(s, z).unwrap_or_else(|| self.fd_cost(Axis::Z, s, z))
    }

    /// Sender CDF `G`.
    pub fn sender_cdf(&self, z: T) -> T {
        self.senders.cdf(z)
    }

    /// Receiver CDF `H`.
    pub fn receiver_cdf(&self, x: T) -> T {
        self.receivers.cdf(x)
    }

    /// Positive assortative partner `n(z) = H^{-1}(G(z))`.
    pub fn quantile_match(&self, z: T) -> Result<T> {
        let zs = self.sender_types();
        if !zs.contains(z) {
            return Err(Error::Domain(format!(
                "sender type {z} outside [{}, {}]",
                zs.lo, zs.hi
            )));
        }
        let xs = self.receiver_types();
        if z == zs.lo {
            return Ok(xs.lo);
        }
        if z == zs.hi {
            return Ok(xs.hi);
        }
        Ok(self.receivers.quantile(self.senders.cdf(z)))
    }

    /// Sender type matched with receiver `x`, the inverse of [`quantile_match`](Self::quantile_match).
    pub fn inverse_match(&self, x: T) -> Result<T> {
        let xs = self.receiver_types();
        if !xs.contains(x) {
            return Err(Error::Domain(format!(
                "receiver type {x} outside [{}, {}]",
                xs.lo, xs.hi
            )));
        }
        let zs = self.sender_types();
        if x == xs.lo {
            return Ok(zs.lo);
        }
        if x == xs.hi {
            return Ok(zs.hi);
        }
        Ok(self.senders.quantile(self.receivers.cdf(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::distribution::Uniform;
    use crate::model::families::{FnCost, FnSurplus, LinearOverType, Multiplicative};

    fn unit_uniform(lo: f64, hi: f64) -> Arc<dyn Distribution<f64>> {
        Arc::new(Uniform::new(Interval::new(lo, hi).unwrap()))
    }

    fn u_model() -> ModelPrimitives<f64> {
        ModelPrimitives::new(
            Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
            Arc::new(LinearOverType::new(1.0, 0.0)),
            unit_uniform(1.0, 2.0),
            unit_uniform(1.0, 2.0),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn quantile_match_examples() {
        let m = u_model();
        assert_eq!(m.quantile_match(1.0).unwrap(), 1.0);
        assert_eq!(m.quantile_match(1.5).unwrap(), 1.5);
        assert!(matches!(m.quantile_match(2.5), Err(Error::Domain(_))));

        let wide = ModelPrimitives::new(
            Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
            Arc::new(LinearOverType::new(1.0, 0.0)),
            unit_uniform(1.0, 2.0),
            unit_uniform(0.0, 4.0),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap();
        assert_eq!(wide.quantile_match(1.5).unwrap(), 2.0);
        assert_eq!(wide.inverse_match(2.0).unwrap(), 1.5);
    }

    #[test]
    fn rejects_costly_null_action() {
        let r = ModelPrimitives::new(
            Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
            Arc::new(FnCost::new(|s: f64, z: f64| 1.0 + s / z)),
            unit_uniform(1.0, 2.0),
            unit_uniform(1.0, 2.0),
            ReactionInterval::unbounded(0.0).unwrap(),
        );
        assert!(matches!(r, Err(Error::Model(_))));
    }

    #[test]
    fn rejects_wrong_supplied_derivative() {
        let bad = FnSurplus::new(|x: f64, _s: f64, z: f64| x * z).with_d_z(|_x, _s, z| z);
        let r = ModelPrimitives::new(
            Arc::new(bad),
            Arc::new(LinearOverType::new(1.0, 0.0)),
            unit_uniform(1.0, 2.0),
            unit_uniform(1.0, 2.0),
            ReactionInterval::unbounded(0.0).unwrap(),
        );
        assert!(matches!(r, Err(Error::Model(msg)) if msg.contains("v_z")));
    }

    #[test]
    fn finite_difference_fallback_is_accurate() {
        let m = ModelPrimitives::new(
            Arc::new(FnSurplus::new(|x: f64, s: f64, z: f64| x * z + x * s.sqrt())),
            Arc::new(FnCost::new(|s: f64, z: f64| s * s / z)),
            unit_uniform(1.0, 2.0),
            unit_uniform(1.0, 2.0),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap();
        assert!((m.v_z(1.5, 0.3, 1.2) - 1.5).abs() < 1e-8);
        assert!((m.v_s(1.5, 0.3, 1.2) - 1.5 * 0.5 / 0.3f64.sqrt()).abs() < 1e-7);
        assert!((m.c_s(0.0, 1.5)).abs() < 1e-9);
        assert!((m.c_z(1.0, 2.0) + 0.25).abs() < 1e-8);
        assert!((m.v_x(2.0, 0.25, 1.0) - 1.5).abs() < 1e-8);
    }
}
