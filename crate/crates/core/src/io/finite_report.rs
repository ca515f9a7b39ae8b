use serde::{Deserialize, Serialize};

use crate::finite::{EquivalenceReport, ReactionDomain};
use crate::model::Certificate;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PbeRecord {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub beliefs: Vec<Vec<String>>,
    pub utility: Vec<String>,
    pub d1: bool,
    pub stronger_monotone: bool,
    pub agrees: bool,
    pub d1_witness: Option<String>,
    pub monotone_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameRecord {
    pub hypothesis: Certificate,
    /// `holds`, `fails` or `not asserted`.
    pub verdict: String,
    pub pbe_count: usize,
    pub support_classes: usize,
    pub disagreements: usize,
    pub pbes: Vec<PbeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteReport {
    pub domain: String,
    pub games: usize,
    pub asserted_games: usize,
    pub total_pbes: usize,
    pub total_disagreements: usize,
    /// `holds` when every asserted game holds, else `fails`; `not asserted` when none is asserted.
    pub verdict: String,
    pub reports: Vec<GameRecord>,
}

pub fn domain_label(domain: ReactionDomain) -> &'static str {
    match domain {
        ReactionDomain::Listed => "listed",
        ReactionDomain::UnboundedQuasilinear => "unbounded_quasilinear",
    }
}

fn verdict(holds: Option<bool>) -> String {
    match holds {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "not asserted",
    }
    .into()
}

pub fn game_record(report: &EquivalenceReport<Rational>) -> GameRecord {
    let pbes = report
        .verdicts
        .iter()
        .map(|v| PbeRecord {
            sigma: v.pbe.sigma.clone(),
            tau: v.pbe.tau.clone(),
            beliefs: v.pbe.beliefs.iter().map(|b| b.iter().map(|w| w.to_string()).collect()).collect(),
            utility: v.pbe.utility.iter().map(|u| u.to_string()).collect(),
            d1: v.d1,
            stronger_monotone: v.stronger_monotone,
            agrees: v.agrees(),
            d1_witness: v
                .d1_witness
                .as_ref()
                .map(|(s, z, allowed)| format!("action {s}: belief on type {z} outside D1 set {allowed:?}")),
            monotone_witness: v.monotone_witness.clone(),
        })
        .collect();
    GameRecord {
        hypothesis: report.hypothesis.clone(),
        verdict: verdict(report.holds()),
        pbe_count: report.verdicts.len(),
        support_classes: report.support_classes(),
        disagreements: report.disagreements().count(),
        pbes,
    }
}

pub fn finite_report(reports: &[EquivalenceReport<Rational>], domain: ReactionDomain) -> FiniteReport {
    let records: Vec<GameRecord> = reports.iter().map(game_record).collect();
    let asserted: Vec<&EquivalenceReport<Rational>> = reports.iter().filter(|r| r.asserted).collect();
    let overall = if asserted.is_empty() {
        None
    } else {
        Some(asserted.iter().all(|r| r.holds() == Some(true)))
    };
    FiniteReport {
        domain: domain_label(domain).into(),
        games: reports.len(),
        asserted_games: asserted.len(),
        total_pbes: records.iter().map(|r| r.pbe_count).sum(),
        total_disagreements: asserted.iter().map(|r| r.disagreements().count()).sum(),
        verdict: verdict(overall),
        reports: records,
    }
}
