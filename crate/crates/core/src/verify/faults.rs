use crate::cse::{CseSolution, Regime};
use crate::error::{Error, Result};
use crate::model::Interval;
use crate::scalar::{lit, Real};

/// Deliberate corruption of a valid solution, used to show that the audits
/// reject wrong equilibria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fault {
    /// Raise the reaction at the arc node nearest the given fraction of the arc.
    ReactionBump { at: f64, by: f64 },
    /// Raise the belief at one arc node.
    BeliefBump { at: f64, by: f64 },
    /// Raise the matched receiver at one arc node.
    PartnerBump { at: f64, by: f64 },
    /// Exchange the matched receivers of two arc nodes.
    PartnerSwap { first: f64, second: f64 },
    /// Move the entry type and its partner up.
    EntryShift { by: f64 },
    /// Move the pooling threshold and the pooled block's lower ends up.
    PoolingOnsetShift { by: f64 },
    /// Raise the pooled action.
    PooledActionShift { by: f64 },
    /// Scale every arc reaction about the first one.
    ReactionTilt { factor: f64 },
}

impl Fault {
    /// Faults of magnitude at least `1e-2` that apply to the solution's regime.
    pub fn standard_suite<T: Real>(sol: &CseSolution<T>) -> Vec<Fault> {
        let mut out = Vec::new();
        if sol.arc.len() >= 3 {
            out.extend([
                Fault::ReactionBump { at: 0.5, by: 1e-2 },
                Fault::BeliefBump { at: 0.4, by: 1e-2 },
                Fault::PartnerBump { at: 0.6, by: 1e-2 },
                Fault::PartnerSwap { first: 0.3, second: 0.7 },
                Fault::EntryShift { by: 1e-2 },
                Fault::ReactionTilt { factor: 1.01 },
            ]);
        }
        if let Some(p) = sol.pooled {
            out.push(Fault::PoolingOnsetShift { by: 1e-2 });
            // a pool that starts at entry under a slack cap leaves its action unpinned
            let unpinned = sol.regime == Regime::Pooling && p.reaction > sol.reactions.lo;
            if !unpinned {
                out.push(Fault::PooledActionShift { by: 1e-2 });
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{self:?}")
    }

    pub fn apply<T: Real>(&self, sol: &CseSolution<T>) -> Result<CseSolution<T>> {
        let mut out = sol.clone();
        let n = out.arc.len();
        let node = |at: f64| -> Result<usize> {
            if n < 3 {
                return Err(Error::Precondition(format!("{self:?} needs a separating arc")));
            }
            Ok(((at * (n - 1) as f64).round() as usize).clamp(1, n - 2))
        };
        let no_pool = || Error::Precondition(format!("{self:?} needs a pooled block"));
        match *self {
            Fault::ReactionBump { at, by } => {
                let i = node(at)?;
                out.arc.reactions[i] = out.arc.reactions[i] + lit(by);
            }
            Fault::BeliefBump { at, by } => {
                let i = node(at)?;
                out.arc.beliefs[i] = out.arc.beliefs[i] + lit(by);
            }
            Fault::PartnerBump { at, by } => {
                let i = node(at)?;
                out.arc.partners[i] = out.arc.partners[i] + lit(by);
            }
            Fault::PartnerSwap { first, second } => {
                let (i, j) = (node(first)?, node(second)?);
                out.arc.partners.swap(i, j);
            }
            Fault::EntryShift { by } => {
                let th = out.thresholds.as_mut().ok_or_else(|| Error::Precondition("no entrants".into()))?;
                th.z_ell = th.z_ell + lit(by);
                th.x_ell = th.x_ell + lit(by);
            }
            Fault::PoolingOnsetShift { by } => {
                let p = out.pooled.as_mut().ok_or_else(no_pool)?;
                p.types = Interval::new(p.types.lo + lit(by), p.types.hi)?;
                if let Some(j) = out.thresholds.as_mut().and_then(|t| t.jump.as_mut()) {
                    j.z_h = p.types.lo;
                }
                if out.regime == Regime::Pooling {
                    if let Some(th) = out.thresholds.as_mut() {
                        th.z_ell = p.types.lo;
                    }
                }
            }
            Fault::PooledActionShift { by } => {
                let p = out.pooled.as_mut().ok_or_else(no_pool)?;
                p.action = p.action + lit(by);
                if let Some(j) = out.thresholds.as_mut().and_then(|t| t.jump.as_mut()) {
                    j.s_h = p.action;
                }
            }
            Fault::ReactionTilt { factor } => {
                if n < 2 {
                    return Err(Error::Precondition(format!("{self:?} needs a separating arc")));
                }
                let base = out.arc.reactions[0];
                for t in out.arc.reactions.iter_mut() {
                    *t = base + (*t - base) * lit(factor);
                }
            }
        }
        Ok(out)
    }
}
