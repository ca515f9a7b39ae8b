use crate::cse::entry::action_costing;
use crate::cse::expectation::conditional_surplus_expectation;
use crate::error::{Error, Result};
use crate::model::ModelPrimitives;
use crate::numeric::try_bisect;
use crate::scalar::{lit, Real};

const EDGE: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolingPair<T> {
    pub z_star: T,
    pub s_star: T,
}

/// Lowest entering type and common action when every reaction equals `t_star`.
///
/// With `t_star = 0` everybody enters at the null action. Otherwise the
/// marginal type covers `t_star` exactly with its cost and its partner
/// expects exactly `t_star` of surplus from the pooled upper tail.
pub fn solve_pooling<T: Real>(m: &ModelPrimitives<T>, t_star: T) -> Result<PoolingPair<T>> {
    let zs = m.sender_types();
    if t_star <= T::zero() {
        return Ok(PoolingPair {
            z_star: zs.lo,
            s_star: T::zero(),
        });
    }
    let residual = |z: T| -> Result<T> {
        let s = action_costing(m, z, t_star)?;
        Ok(conditional_surplus_expectation(m, m.quantile_match(z)?, s, z) - t_star)
    };
    let lo = zs.lo + lit(EDGE);
    let no_root = || {
        Error::Model(format!(
            "no interior pooling type for reaction {t_star}; the pooled surplus must cross it, \
             which needs the cost of the lowest type to explode"
        ))
    };
    let (r_lo, r_hi) = (residual(lo)?, residual(zs.hi)?);
    if (r_lo > T::zero()) == (r_hi > T::zero()) && r_hi != T::zero() {
        return Err(no_root());
    }
    let z_star = try_bisect(residual, lo, zs.hi, T::zero(), T::zero(), "pooling type")?;
    let s_star = action_costing(m, z_star, t_star)?;
    let tol = lit::<T>(RESIDUAL_TOL);
    let seller = (m.c(s_star, z_star) - t_star).abs();
    let buyer = residual(z_star)?.abs();
    if seller > tol || buyer > tol {
        return Err(Error::Convergence(format!("pooling residuals {seller}, {buyer} exceed {tol}")));
    }
    if !(z_star > zs.lo && s_star > T::zero()) {
        return Err(no_root());
    }
    Ok(PoolingPair { z_star, s_star })
}
