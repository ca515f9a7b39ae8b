use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Model(format!(
                "interval [{lo}, {hi}] must be finite and nondegenerate"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    /// Point at fraction `f` of the way from `lo` to `hi`.
    pub fn at(&self, f: T) -> T {
        self.lo + (self.hi - self.lo) * f
    }
}

/// Upper end of the feasible reaction interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ReactionCap<T> {
    Finite(T),
    Unbounded,
}

/// Feasible reactions `[lo, hi]`, where `hi` may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReactionInterval<T> {
    pub lo: T,
    pub hi: ReactionCap<T>,
}

impl<T: Real> ReactionInterval<T> {
    pub fn new(lo: T, hi: ReactionCap<T>) -> Result<Self> {
        if !lo.is_finite() || lo < T::zero() {
            return Err(Error::Model(format!("reaction floor {lo} must be finite and >= 0")));
        }
        if let ReactionCap::Finite(h) = hi {
            if !h.is_finite() || h < lo {
                return Err(Error::Model(format!(
                    "reaction cap {h} must be finite and >= floor {lo}"
                )));
            }
        }
        Ok(ReactionInterval { lo, hi })
    }

    pub fn unbounded(lo: T) -> Result<Self> {
        Self::new(lo, ReactionCap::Unbounded)
    }

    pub fn bounded(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, ReactionCap::Finite(hi))
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.hi, ReactionCap::Finite(h) if h == self.lo)
    }

    pub fn cap(&self) -> Option<T> {
        match self.hi {
            ReactionCap::Finite(h) => Some(h),
            ReactionCap::Unbounded => None,
        }
    }

    /// Clamps `t` to the feasible range.
    pub fn clamp(&self, t: T) -> T {
        let t = t.max(self.lo);
        match self.hi {
            ReactionCap::Finite(h) => t.min(h),
            ReactionCap::Unbounded => t,
        }
    }
}
