use crate::model::ModelPrimitives;
use crate::numeric::adaptive_simpson;
use crate::scalar::{lit, Real};

/// Expected surplus of receiver `x` from action `s` when the sender is drawn
/// from the upper tail `[z, z_hi]` of the sender distribution.
pub fn conditional_surplus_expectation<T: Real>(m: &ModelPrimitives<T>, x: T, s: T, z: T) -> T {
    let zs = m.sender_types();
    let tail = T::one() - m.sender_cdf(z);
    if tail < lit(1e-14) || z >= zs.hi {
        return m.v(x, s, zs.hi);
    }
    let lo = z.max(zs.lo);
    let senders = m.senders();
    let integral = adaptive_simpson(|t| m.v(x, s, t) * senders.pdf(t), lo, zs.hi, lit::<T>(1e-10) * tail);
    integral / tail
}
