use crate::cse::belief::{ArcEvaluator, SeparatingArc};
use crate::cse::entry::action_costing;
use crate::cse::expectation::conditional_surplus_expectation;
use crate::error::{Error, Result};
use crate::model::ModelPrimitives;
use crate::numeric::try_bisect;
use crate::scalar::{lit, Real};

const EDGE: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;

/// Threshold type where pooling starts, the pooled action, and the
/// separating action of the threshold type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpingPair<T> {
    pub z_h: T,
    pub s_h: T,
    pub arc_action: T,
}

impl<T: Real> JumpingPair<T> {
    /// Pooling starts at the entry type, leaving no separating arc.
    pub fn at_entry(&self, z_ell: T) -> bool {
        self.z_h == z_ell
    }
}

struct Trial<T> {
    pooled_action: T,
    arc_action: T,
    seller_residual: T,
    buyer_residual: T,
}

fn trial<T: Real>(ev: &ArcEvaluator<'_, T>, t_hi: T, z: T) -> Result<Trial<T>> {
    let m = ev.m;
    let arc_action = ev.action(z)?;
    let arc_reaction = ev.reaction(arc_action)?;
    let utility = arc_reaction - m.c(arc_action, z);
    let pooled_action = action_costing(m, z, t_hi - utility)?;
    let x = m.quantile_match(z)?;
    let pooled_value = conditional_surplus_expectation(m, x, pooled_action, z) - t_hi;
    let arc_value = m.v(x, arc_action, z) - arc_reaction;
    Ok(Trial {
        pooled_action,
        arc_action,
        seller_residual: t_hi - m.c(pooled_action, z) - utility,
        buyer_residual: pooled_value - arc_value,
    })
}

/// Solves the two indifference conditions at the pooling threshold: the
/// threshold sender is indifferent between its separating action and the
/// pooled action at the cap, and its partner is indifferent between the
/// two matches.
///
/// The sellers' condition fixes the pooled action for each trial type; the
/// buyers' residual is then bisected in the type. When even the entry
/// partner prefers the pool to the bottom of the arc, pooling starts at the
/// entry type and only the sellers' condition is imposed there.
pub fn solve_jumping_pair<T: Real>(
    m: &ModelPrimitives<T>,
    arc: &SeparatingArc<T>,
    t_hi: T,
) -> Result<JumpingPair<T>> {
    let ev = ArcEvaluator { m, arc };
    let z_ell = arc.beliefs[0];
    let z_hi = m.sender_types().hi;
    let (lo, hi) = (z_ell + lit(EDGE), z_hi - lit(EDGE));
    if !(lo < hi) {
        return Err(Error::Regime(format!("no room for a pooling threshold in ({z_ell}, {z_hi})")));
    }
    let (r_lo, r_hi) = (trial(&ev, t_hi, lo)?.buyer_residual, trial(&ev, t_hi, hi)?.buyer_residual);
    if r_lo >= T::zero() && r_hi > T::zero() {
        let s_ell = arc.actions[0];
        let utility = arc.reactions[0] - m.c(s_ell, z_ell);
        return Ok(JumpingPair {
            z_h: z_ell,
            s_h: action_costing(m, z_ell, t_hi - utility)?,
            arc_action: s_ell,
        });
    }
    if (r_lo > T::zero()) == (r_hi > T::zero()) {
        return Err(Error::Regime(format!(
            "jumping system has no root in ({z_ell}, {z_hi}); buyer residuals {r_lo}, {r_hi}"
        )));
    }
    let z_h = try_bisect(
        |z| Ok(trial(&ev, t_hi, z)?.buyer_residual),
        lo,
        hi,
        T::zero(),
        T::zero(),
        "pooling threshold",
    )?;
    let sol = trial(&ev, t_hi, z_h)?;
    let tol = lit::<T>(RESIDUAL_TOL);
    if sol.seller_residual.abs() > tol || sol.buyer_residual.abs() > tol {
        return Err(Error::Convergence(format!(
            "jumping residuals {}, {} exceed {tol}",
            sol.seller_residual, sol.buyer_residual
        )));
    }
    let arc_top = arc.top_action();
    if !(sol.arc_action < sol.pooled_action && sol.pooled_action < arc_top) {
        return Err(Error::Regime(format!(
            "pooled action {} is not strictly between {} and {arc_top}",
            sol.pooled_action, sol.arc_action
        )));
    }
    Ok(JumpingPair {
        z_h,
        s_h: sol.pooled_action,
        arc_action: sol.arc_action,
    })
}
