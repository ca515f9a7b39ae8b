//! Parametric surplus and cost families, plus closure adaptors for custom models.

use crate::model::primitives::{Cost, Surplus};
use crate::scalar::{lit, Real};

/// `v = a (x - x0) z + b (x - x0) s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplicative<T> {
    pub a: T,
    pub b: T,
    pub x0: T,
}

impl<T: Real> Multiplicative<T> {
    pub fn new(a: T, b: T, x0: T) -> Self {
        Multiplicative { a, b, x0 }
    }
}

impl<T: Real> Surplus<T> for Multiplicative<T> {
    fn value(&self, x: T, s: T, z: T) -> T {
        (x - self.x0) * (self.a * z + self.b * s)
    }
    fn d_x(&self, _x: T, s: T, z: T) -> Option<T> {
        Some(self.a * z + self.b * s)
    }
    fn d_s(&self, x: T, _s: T, _z: T) -> Option<T> {
        Some(self.b * (x - self.x0))
    }
    fn d_z(&self, x: T, _s: T, _z: T) -> Option<T> {
        Some(self.a * (x - self.x0))
    }
}

/// `v = x^p z^q (1 + s)^r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobbLike<T> {
    pub p: T,
    pub q: T,
    pub r: T,
}

impl<T: Real> Surplus<T> for CobbLike<T> {
    fn value(&self, x: T, s: T, z: T) -> T {
        x.powf(self.p) * z.powf(self.q) * (T::one() + s).powf(self.r)
    }
    fn d_x(&self, x: T, s: T, z: T) -> Option<T> {
        Some(self.p * x.powf(self.p - T::one()) * z.powf(self.q) * (T::one() + s).powf(self.r))
    }
    fn d_s(&self, x: T, s: T, z: T) -> Option<T> {
        Some(self.r * x.powf(self.p) * z.powf(self.q) * (T::one() + s).powf(self.r - T::one()))
    }
    fn d_z(&self, x: T, s: T, z: T) -> Option<T> {
        Some(self.q * x.powf(self.p) * z.powf(self.q - T::one()) * (T::one() + s).powf(self.r))
    }
}

/// `v = a x z + b x sqrt(s)`; the action has an infinite marginal value at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootAction<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Surplus<T> for RootAction<T> {
    fn value(&self, x: T, s: T, z: T) -> T {
        self.a * x * z + self.b * x * s.max(T::zero()).sqrt()
    }
    fn d_x(&self, _x: T, s: T, z: T) -> Option<T> {
        Some(self.a * z + self.b * s.max(T::zero()).sqrt())
    }
    fn d_s(&self, x: T, s: T, _z: T) -> Option<T> {
        if s <= T::zero() {
            return Some(T::infinity());
        }
        Some(self.b * x / (lit::<T>(2.0) * s.sqrt()))
    }
    fn d_z(&self, x: T, _s: T, _z: T) -> Option<T> {
        Some(self.a * x)
    }
}

/// `c = k s / (z - z0)`, defined for `z > z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearOverType<T> {
    pub k: T,
    pub z0: T,
}

impl<T: Real> LinearOverType<T> {
    pub fn new(k: T, z0: T) -> Self {
        LinearOverType { k, z0 }
    }
}

impl<T: Real> Cost<T> for LinearOverType<T> {
    fn value(&self, s: T, z: T) -> T {
        if s == T::zero() {
            return T::zero();
        }
        self.k * s / (z - self.z0)
    }
    fn d_s(&self, _s: T, z: T) -> Option<T> {
        Some(self.k / (z - self.z0))
    }
    fn d_z(&self, s: T, z: T) -> Option<T> {
        let d = z - self.z0;
        Some(-self.k * s / (d * d))
    }
}

/// `c = k s^m / z^r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerCost<T> {
    pub k: T,
    pub m: T,
    pub r: T,
}

impl<T: Real> Cost<T> for PowerCost<T> {
    fn value(&self, s: T, z: T) -> T {
        if s <= T::zero() {
            return T::zero();
        }
        self.k * s.powf(self.m) / z.powf(self.r)
    }
    fn d_s(&self, s: T, z: T) -> Option<T> {
        if s <= T::zero() {
            // m > 1 gives a flat start; m = 1 gives the linear slope
            let slope = if self.m > T::one() {
                T::zero()
            } else if self.m == T::one() {
                self.k / z.powf(self.r)
            } else {
                T::infinity()
            };
            return Some(slope);
        }
        Some(self.k * self.m * s.powf(self.m - T::one()) / z.powf(self.r))
    }
    fn d_z(&self, s: T, z: T) -> Option<T> {
        if s <= T::zero() {
            return Some(T::zero());
        }
        Some(-self.k * self.r * s.powf(self.m) / z.powf(self.r + T::one()))
    }
}

type Fn3<T> = Box<dyn Fn(T, T, T) -> T + Send + Sync>;
type Fn2<T> = Box<dyn Fn(T, T) -> T + Send + Sync>;

/// Surplus from closures.
pub struct FnSurplus<T> {
    value: Fn3<T>,
    d_x: Option<Fn3<T>>,
    d_s: Option<Fn3<T>>,
    d_z: Option<Fn3<T>>,
}

impl<T> FnSurplus<T> {
    pub fn new(value: impl Fn(T, T, T) -> T + Send + Sync + 'static) -> Self {
        FnSurplus {
            value: Box::new(value),
            d_x: None,
            d_s: None,
            d_z: None,
        }
    }
    pub fn with_d_x(mut self, f: impl Fn(T, T, T) -> T + Send + Sync + 'static) -> Self {
        self.d_x = Some(Box::new(f));
        self
    }
    pub fn with_d_s(mut self, f: impl Fn(T, T, T) -> T + Send + Sync + 'static) -> Self {
        self.d_s = Some(Box::new(f));
        self
    }
    pub fn with_d_z(mut self, f: impl Fn(T, T, T) -> T + Send + Sync + 'static) -> Self {
        self.d_z = Some(Box::new(f));
        self
    }
}

impl<T> Surplus<T> for FnSurplus<T> {
    fn value(&self, x: T, s: T, z: T) -> T {
        (self.value)(x, s, z)
    }
    fn d_x(&self, x: T, s: T, z: T) -> Option<T> {
        self.d_x.as_ref().map(|f| f(x, s, z))
    }
    fn d_s(&self, x: T, s: T, z: T) -> Option<T> {
        self.d_s.as_ref().map(|f| f(x, s, z))
    }
    fn d_z(&self, x: T, s: T, z: T) -> Option<T> {
        self.d_z.as_ref().map(|f| f(x, s, z))
    }
}

/// Cost from closures.
pub struct FnCost<T> {
    value: Fn2<T>,
    d_s: Option<Fn2<T>>,
    d_z: Option<Fn2<T>>,
}

impl<T> FnCost<T> {
    pub fn new(value: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        FnCost {
            value: Box::new(value),
            d_s: None,
            d_z: None,
        }
    }
    pub fn with_d_s(mut self, f: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        self.d_s = Some(Box::new(f));
        self
    }
    pub fn with_d_z(mut self, f: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        self.d_z = Some(Box::new(f));
        self
    }
}

impl<T> Cost<T> for FnCost<T> {
    fn value(&self, s: T, z: T) -> T {
        (self.value)(s, z)
    }
    fn d_s(&self, s: T, z: T) -> Option<T> {
        self.d_s.as_ref().map(|f| f(s, z))
    }
    fn d_z(&self, s: T, z: T) -> Option<T> {
        self.d_z.as_ref().map(|f| f(s, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_derivatives_match_difference_quotients() {
        let h = 1e-6;
        let v = CobbLike { p: 1.5f64, q: 0.5, r: 0.3 };
        let (x, s, z) = (1.3, 0.7, 1.6);
        let fd = (v.value(x, s + h, z) - v.value(x, s - h, z)) / (2.0 * h);
        assert!((v.d_s(x, s, z).unwrap() - fd).abs() < 1e-8);
        let c = PowerCost { k: 1.0f64, m: 2.0, r: 1.0 };
        let fd = (c.value(s, z + h) - c.value(s, z - h)) / (2.0 * h);
        assert!((c.d_z(s, z).unwrap() - fd).abs() < 1e-8);
        assert_eq!(c.d_s(0.0, z), Some(0.0));
    }

    #[test]
    fn linear_over_type_blows_up_at_shift() {
        let c = LinearOverType::new(1.0, 1.0);
        assert_eq!(c.value(0.0, 1.0), 0.0);
        assert!(c.value(0.1, 1.0 + 1e-9) > 1e7);
    }
}
