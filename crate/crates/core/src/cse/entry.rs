use serde::{Deserialize, Serialize};

use crate::cse::efficient::bilaterally_efficient_action;
use crate::error::{Error, Result};
use crate::model::ModelPrimitives;
use crate::numeric::{bisect, expand_bracket_up, try_bisect};
use crate::scalar::{lit, Real};

/// How the lowest active match is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryCase {
    /// The lowest types match, taking the efficient action.
    AllTypesEnter,
    /// An interior marginal pair is indifferent about entering.
    InteriorEntry,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPair<T> {
    pub s_ell: T,
    pub z_ell: T,
    pub case: EntryCase,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryOutcome<T> {
    Pair(InitialPair<T>),
    /// No pair can cover the reaction floor; everybody stays out.
    EmptyMarket { reason: String },
}

const RESIDUAL_TOL: f64 = 1e-10;

/// Action at which type `z` incurs cost exactly `budget`.
pub(crate) fn action_costing<T: Real>(m: &ModelPrimitives<T>, z: T, budget: T) -> Result<T> {
    if budget <= T::zero() {
        return Ok(T::zero());
    }
    let f = |s: T| {
        let v = m.c(s, z) - budget;
        if v.is_finite() {
            v
        } else {
            T::max_value()
        }
    };
    let bracket = expand_bracket_up(f, T::zero(), lit(1e-3), lit(1e15)).ok_or_else(|| {
        Error::Model(format!("cost of type {z} never reaches {budget}"))
    })?;
    bisect(f, bracket.lo, bracket.hi, T::zero(), T::zero(), "cost inversion")
}

/// Lowest matched sender type and its action.
///
/// All types enter when the lowest receiver values the lowest sender's
/// efficient action at least at the reaction floor. Otherwise the marginal
/// pair solves `v(n(z), s, z) = t_lo = c(s, z)`, found by bisection on `z`
/// with `s` pinned by the cost equation.
pub fn solve_initial_pair<T: Real>(m: &ModelPrimitives<T>) -> Result<EntryOutcome<T>> {
    let zs = m.sender_types();
    let xs = m.receiver_types();
    let t_lo = m.reactions().lo;
    let s0 = bilaterally_efficient_action(m, xs.lo, zs.lo)?;
    if m.v(xs.lo, s0, zs.lo) >= t_lo - lit(1e-12) {
        return Ok(EntryOutcome::Pair(InitialPair {
            s_ell: s0,
            z_ell: zs.lo,
            case: EntryCase::AllTypesEnter,
        }));
    }
    let s_top = bilaterally_efficient_action(m, xs.hi, zs.hi)?;
    if m.v(xs.hi, s_top, zs.hi) - m.c(s_top, zs.hi) <= t_lo {
        return Ok(EntryOutcome::EmptyMarket {
            reason: format!("reaction floor {t_lo} exceeds the largest match surplus"),
        });
    }
    let gap = |z: T| -> Result<T> {
        let s = action_costing(m, z, t_lo)?;
        Ok(m.v(m.quantile_match(z)?, s, z) - t_lo)
    };
    if gap(zs.hi)? < T::zero() {
        return Ok(EntryOutcome::EmptyMarket {
            reason: format!("no sender type can cover the reaction floor {t_lo}"),
        });
    }
    let z_ell = if gap(zs.lo)? >= T::zero() {
        zs.lo
    } else {
        try_bisect(gap, zs.lo, zs.hi, T::zero(), T::zero(), "entry threshold")?
    };
    let s_ell = action_costing(m, z_ell, t_lo)?;
    let x_ell = m.quantile_match(z_ell)?;
    let r_buyer = (m.v(x_ell, s_ell, z_ell) - t_lo).abs();
    let r_seller = (m.c(s_ell, z_ell) - t_lo).abs();
    let tol = lit::<T>(RESIDUAL_TOL) * T::one().max(t_lo);
    if r_buyer > tol || r_seller > tol {
        return Err(Error::Convergence(format!(
            "entry pair residuals {r_buyer}, {r_seller} exceed {tol}"
        )));
    }
    Ok(EntryOutcome::Pair(InitialPair {
        s_ell,
        z_ell,
        case: EntryCase::InteriorEntry,
    }))
}
