//! Independent audits of a candidate equilibrium. Every check reads only
//! the solution and the primitives.

mod audit;
mod checks;
mod faults;
mod lipschitz;

use serde::{Deserialize, Serialize};

use crate::cse::CseSolution;
use crate::error::Result;
use crate::model::ModelPrimitives;
use crate::scalar::Real;

pub use checks::{
    check_bunching_structure, check_first_order_conditions, check_lipschitz, check_market_clearing,
    check_monotonicity, check_offpath_deviation_d1, check_sender_optimality, check_stability, check_thresholds,
    check_wtp_shape, offpath_grid, CheckRecord, VerifyOptions, BUNCHING, FIRST_ORDER, LIPSCHITZ, MARKET_CLEARING,
    MONOTONICITY, OFFPATH_D1, SENDER_OPTIMALITY, STABILITY, THRESHOLDS, WTP_SHAPE,
};
pub use faults::Fault;
pub use lipschitz::{lipschitz_estimate, LipschitzEstimate, ILL_CONDITIONED};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn from_records(records: Vec<CheckRecord>) -> Self {
        let pass = records.iter().all(|r| r.pass);
        VerificationReport { records, pass }
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Runs every audit on `sol`.
pub fn verify_solution<T: Real>(
    sol: &CseSolution<T>,
    m: &ModelPrimitives<T>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    Ok(VerificationReport::from_records(vec![
        check_sender_optimality(sol, m, opts),
        check_offpath_deviation_d1(sol, m, opts)?,
        check_stability(sol, m, opts),
        check_market_clearing(sol, m, opts),
        check_bunching_structure(sol, opts),
        check_thresholds(sol, m, opts),
        check_first_order_conditions(sol, m, opts),
        check_monotonicity(sol, m, opts),
        check_lipschitz(sol, m, opts),
        check_wtp_shape(sol, m, opts),
    ]))
}
