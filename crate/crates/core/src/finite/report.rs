use rayon::prelude::*;

use crate::error::Result;
use crate::finite::enumerate::{enumerate_pure_pbe, EnumerationOptions, PurePbe};
use crate::finite::game::FiniteGame;
use crate::finite::refine::{is_stronger_monotone, passes_criterion_d1, ReactionDomain};
use crate::model::certify::Certificate;
use crate::scalar::Payoff;

/// Verdicts for one enumerated equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub struct PbeVerdict<P> {
    pub pbe: PurePbe<P>,
    pub d1: bool,
    pub stronger_monotone: bool,
    pub d1_witness: Option<(usize, usize, Vec<usize>)>,
    pub monotone_witness: Option<String>,
}

impl<P> PbeVerdict<P> {
    pub fn agrees(&self) -> bool {
        self.d1 == self.stronger_monotone
    }
}

/// Comparison of D1 and stronger monotonicity over every enumerated PBE.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<P> {
    pub hypothesis: Certificate,
    /// False when the sender utility fails the hypothesis; no claim is made then.
    pub asserted: bool,
    pub domain: ReactionDomain,
    pub verdicts: Vec<PbeVerdict<P>>,
}

impl<P> EquivalenceReport<P> {
    pub fn disagreements(&self) -> impl Iterator<Item = &PbeVerdict<P>> {
        self.verdicts.iter().filter(|v| !v.agrees())
    }

    /// Number of distinct on-path partitions: PBEs in one class send the
    /// same types to the same actions, whatever happens off path.
    pub fn support_classes(&self) -> usize {
        let keys: std::collections::BTreeSet<&Vec<usize>> =
            self.verdicts.iter().map(|v| &v.pbe.sigma).collect();
        keys.len()
    }

    /// `Some(true)` when asserted and every PBE agrees.
    pub fn holds(&self) -> Option<bool> {
        self.asserted.then(|| self.verdicts.iter().all(PbeVerdict::agrees))
    }
}

pub fn equivalence_report<P: Payoff>(
    game: &FiniteGame<P>,
    options: &EnumerationOptions,
    domain: ReactionDomain,
) -> Result<EquivalenceReport<P>> {
    let hypothesis = game.sender_certificate();
    let asserted = hypothesis.passed();
    let mut verdicts = Vec::new();
    for pbe in enumerate_pure_pbe(game, options)? {
        let d1 = passes_criterion_d1(game, &pbe, domain)?;
        let mono = is_stronger_monotone(&pbe);
        verdicts.push(PbeVerdict {
            d1: d1.passes,
            stronger_monotone: mono.holds,
            d1_witness: d1.witness,
            monotone_witness: mono.witness,
            pbe,
        });
    }
    Ok(EquivalenceReport {
        hypothesis,
        asserted,
        domain,
        verdicts,
    })
}

/// Equivalence reports for many games, in input order.
pub fn equivalence_sweep<P: Payoff>(
    games: &[FiniteGame<P>],
    options: &EnumerationOptions,
    domain: ReactionDomain,
) -> Result<Vec<EquivalenceReport<P>>> {
    games
        .par_iter()
        .map(|g| equivalence_report(g, options, domain))
        .collect()
}
