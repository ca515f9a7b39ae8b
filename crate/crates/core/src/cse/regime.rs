use crate::cse::solution::Regime;
use crate::model::{ReactionCap, ReactionInterval};
use crate::scalar::Real;

/// Regime implied by the reaction interval and the top reaction `tau_top`
/// of the uncapped separating solution.
pub fn classify_regime<T: Real>(tau_top: T, reactions: &ReactionInterval<T>) -> Regime {
    if reactions.is_degenerate() {
        return Regime::Pooling;
    }
    match reactions.hi {
        ReactionCap::Unbounded => Regime::Separating,
        ReactionCap::Finite(cap) if cap >= tau_top => Regime::Separating,
        ReactionCap::Finite(_) => Regime::StrictlyWellBehaved,
    }
}
