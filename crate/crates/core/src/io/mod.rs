//! Configuration, solution and game files.

mod config;
mod finite_report;
mod game;
mod solution;

pub use config::{
    CostConfig, DistributionConfig, ModelConfig, OutputConfig, ReactionConfig, RunConfig, SolverConfig,
    SurplusConfig, VerifyConfig, MIN_GRID,
};
pub use finite_report::{domain_label, finite_report, game_record, FiniteReport, GameRecord, PbeRecord};
pub use game::{load_game, parse_rational, ExactValue, GameFile, ReceiverSpec, SenderSpec};
pub use solution::{
    decimal, from_json, read_solution, to_json, write_report, write_solution_files, SolutionFile, SolutionSummary,
    SOLUTION_FORMAT,
};
