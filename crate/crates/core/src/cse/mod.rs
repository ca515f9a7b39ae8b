//! Continuum market solver: the unique stronger-monotone competitive
//! signaling equilibrium for given primitives and reaction interval.

mod assemble;
mod belief;
mod efficient;
mod entry;
mod expectation;
mod jumping;
mod pooling;
mod regime;
mod solution;

pub use assemble::{assemble_cse, SolveOptions};
pub use belief::{integrate_belief, integrate_reaction, phi, SeparatingArc};
pub use efficient::bilaterally_efficient_action;
pub use entry::{solve_initial_pair, EntryCase, EntryOutcome, InitialPair};
pub use expectation::conditional_surplus_expectation;
pub use jumping::{solve_jumping_pair, JumpingPair};
pub use pooling::{solve_pooling, PoolingPair};
pub use regime::classify_regime;
pub use solution::{
    ArcTable, BeliefSupport, CseSolution, JumpThreshold, MatchedReceivers, PooledBlock, Regime, SolveMetadata,
    Thresholds,
};
