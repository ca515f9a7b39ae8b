use std::fmt::Debug;

use crate::model::interval::Interval;
use crate::scalar::{lit, Real};

/// Absolutely continuous distribution on a closed interval.
pub trait Distribution<T: Real>: Debug + Send + Sync {
    fn support(&self) -> Interval<T>;
    fn cdf(&self, x: T) -> T;
    fn pdf(&self, x: T) -> T;

    /// Inverse CDF; the default bisects the CDF to 1e-12.
    fn quantile(&self, p: T) -> T {
        let sup = self.support();
        if p <= T::zero() {
            return sup.lo;
        }
        if p >= T::one() {
            return sup.hi;
        }
        let (mut a, mut b) = (sup.lo, sup.hi);
        let tol = lit::<T>(1e-12).max(T::epsilon() * lit(4.0));
        for _ in 0..200 {
            let m = (a + b) * lit(0.5);
            if b - a <= tol * (T::one() + m.abs()) || m == a || m == b {
                break;
            }
            if self.cdf(m) < p {
                a = m;
            } else {
                b = m;
            }
        }
        (a + b) * lit(0.5)
    }
}

/// Uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform<T> {
    pub range: Interval<T>,
}

impl<T: Real> Uniform<T> {
    pub fn new(range: Interval<T>) -> Self {
        Uniform { range }
    }
}

impl<T: Real> Distribution<T> for Uniform<T> {
    fn support(&self) -> Interval<T> {
        self.range
    }
    fn cdf(&self, x: T) -> T {
        ((x - self.range.lo) / self.range.width()).max(T::zero()).min(T::one())
    }
    fn pdf(&self, x: T) -> T {
        if self.range.contains(x) {
            T::one() / self.range.width()
        } else {
            T::zero()
        }
    }
    fn quantile(&self, p: T) -> T {
        let p = p.max(T::zero()).min(T::one());
        if p == T::one() {
            return self.range.hi;
        }
        self.range.lo + p * self.range.width()
    }
}

/// Density linear in `x`, tilted towards the upper end when `tilt > 0`.
///
/// `pdf(x) = (1 + tilt * (2u - 1)) / width` with `u` the relative position,
/// so `|tilt| < 1` keeps the density strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearDensity<T> {
    pub range: Interval<T>,
    pub tilt: T,
}

impl<T: Real> LinearDensity<T> {
    pub fn new(range: Interval<T>, tilt: T) -> crate::Result<Self> {
        if !(tilt.abs() < T::one()) {
            return Err(crate::Error::Model(format!(
                "linear density tilt {tilt} must lie in (-1, 1)"
            )));
        }
        Ok(LinearDensity { range, tilt })
    }
}

impl<T: Real> Distribution<T> for LinearDensity<T> {
    fn support(&self) -> Interval<T> {
        self.range
    }
    fn cdf(&self, x: T) -> T {
        let u = ((x - self.range.lo) / self.range.width()).max(T::zero()).min(T::one());
        // integral of 1 + tilt(2u - 1) from 0 to u
        u + self.tilt * (u * u - u)
    }
    fn pdf(&self, x: T) -> T {
        if !self.range.contains(x) {
            return T::zero();
        }
        let u = (x - self.range.lo) / self.range.width();
        (T::one() + self.tilt * (lit::<T>(2.0) * u - T::one())) / self.range.width()
    }
}
