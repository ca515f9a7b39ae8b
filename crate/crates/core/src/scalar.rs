use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Floating-point scalar used by the continuum model, solver and verifier.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Payoff scalar for finite games.
///
/// Exact types compare exactly; floating types compare with an absolute
/// slack so that equilibrium verdicts do not hinge on rounding noise.
pub trait Payoff: Num + Signed + Copy + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// Absolute slack for comparisons; zero for exact arithmetic.
    fn slack() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `a >= b` up to slack.
    fn weakly_ge(a: Self, b: Self) -> bool {
        a - b >= -Self::slack()
    }

    /// `a > b` beyond slack.
    fn strictly_gt(a: Self, b: Self) -> bool {
        a - b > Self::slack()
    }

    fn approx_eq(a: Self, b: Self) -> bool {
        (a - b).abs() <= Self::slack()
    }
}

impl Payoff for f64 {
    fn slack() -> Self {
        1e-12
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Payoff for f32 {
    fn slack() -> Self {
        1e-6
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Payoff for Ratio<i64> {
    fn slack() -> Self {
        Ratio::from_integer(0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_comparisons_have_no_slack() {
        let a = Ratio::new(1i64, 3);
        let b = Ratio::new(2i64, 6);
        assert!(Payoff::approx_eq(a, b));
        assert!(Payoff::strictly_gt(
            a + Ratio::new(1, 1_000_000_000),
            a + Ratio::new(1, 1_000_000_001)
        ));
        assert!(<f64 as Payoff>::approx_eq(0.1 + 0.2, 0.3));
        assert!(!<f64 as Payoff>::strictly_gt(0.3 + 1e-14, 0.3));
    }

    #[test]
    fn lit_roundtrips() {
        assert_eq!(lit::<f64>(1.5), 1.5);
        assert_eq!(lit::<f32>(0.25), 0.25f32);
    }
}
