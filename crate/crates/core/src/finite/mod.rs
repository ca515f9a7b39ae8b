//! Finite one-sender/one-receiver signaling games: pure-strategy PBE
//! enumeration, the Criterion D1 refinement and stronger monotonicity.

mod enumerate;
mod game;
mod random;
mod refine;
mod report;

pub use enumerate::{enumerate_pure_pbe, BeliefGrid, EnumerationOptions, PurePbe};
pub use game::FiniteGame;
pub use random::{random_game, random_games};
pub use refine::{
    cho_sobel_monotone, d1_allowed_types, d1_belief_characterization, deviation_dominance_holds,
    is_stronger_monotone, ordering_properties, passes_criterion_d1, D1Verdict, OrderingProperties,
    MonotoneVerdict, ReactionDomain,
};
pub use report::{equivalence_sweep, equivalence_report, EquivalenceReport, PbeVerdict};
