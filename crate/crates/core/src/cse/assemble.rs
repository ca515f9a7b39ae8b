use crate::cse::belief::{integrate_belief, integrate_reaction, phi, ArcEvaluator, SeparatingArc};
use crate::cse::entry::{solve_initial_pair, EntryCase, EntryOutcome};
use crate::cse::jumping::solve_jumping_pair;
use crate::cse::pooling::solve_pooling;
use crate::cse::regime::classify_regime;
use crate::cse::solution::{ArcTable, CseSolution, JumpThreshold, PooledBlock, Regime, SolveMetadata, Thresholds};
use crate::error::{Error, Result};
use crate::model::{check_assumptions, AssumptionGrid, CertStatus, Interval, ModelPrimitives};
use crate::numeric::StepControl;
use crate::scalar::{lit, Real};
use crate::verify::lipschitz_estimate;

/// Number of leading assumption certificates whose failure blocks a solve.
const BLOCKING_CERTIFICATES: usize = 6;

#[derive(Debug, Clone)]
pub struct SolveOptions<T> {
    pub control: StepControl<T>,
    /// Solve even when an assumption certificate fails; recorded in the output.
    pub waive_assumptions: bool,
    pub grid: AssumptionGrid<T>,
}

impl<T: Real> Default for SolveOptions<T> {
    fn default() -> Self {
        SolveOptions {
            control: StepControl::with_initial(lit(1e-4)),
            waive_assumptions: false,
            grid: AssumptionGrid::default(),
        }
    }
}

impl<T: Real> SolveOptions<T> {
    pub fn with_step(step: T) -> Self {
        SolveOptions {
            control: StepControl::with_initial(step),
            ..Self::default()
        }
    }
}

fn empty_solution<T: Real>(m: &ModelPrimitives<T>, regime: Regime, metadata: SolveMetadata) -> CseSolution<T> {
    CseSolution {
        regime,
        sender_types: m.sender_types(),
        receiver_types: m.receiver_types(),
        reactions: m.reactions(),
        thresholds: None,
        tau_top: None,
        arc: ArcTable::default(),
        pooled: None,
        metadata,
    }
}

fn table_from_arc<T: Real>(m: &ModelPrimitives<T>, arc: &SeparatingArc<T>) -> Result<ArcTable<T>> {
    let zs = m.sender_types();
    let partners = arc
        .beliefs
        .iter()
        .map(|&z| m.quantile_match(z.max(zs.lo).min(zs.hi)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ArcTable {
        actions: arc.actions.clone(),
        beliefs: arc.beliefs.clone(),
        reactions: arc.reactions.clone(),
        partners,
    })
}

fn pooled_solution<T: Real>(m: &ModelPrimitives<T>, mut metadata: SolveMetadata) -> Result<CseSolution<T>> {
    let t_star = m.reactions().lo;
    let p = solve_pooling(m, t_star)?;
    let x_star = m.quantile_match(p.z_star)?;
    metadata.notes.push(format!("single feasible reaction {t_star}: all entrants pool"));
    Ok(CseSolution {
        thresholds: Some(Thresholds {
            z_ell: p.z_star,
            s_ell: p.s_star,
            x_ell: x_star,
            jump: Some(JumpThreshold {
                z_h: p.z_star,
                s_h: p.s_star,
                x_h: x_star,
            }),
        }),
        pooled: Some(PooledBlock {
            types: Interval::new(p.z_star, m.sender_types().hi)?,
            action: p.s_star,
            reaction: t_star,
            receivers: Interval::new(x_star, m.receiver_types().hi)?,
        }),
        ..empty_solution(m, Regime::Pooling, metadata)
    })
}

/// Computes the stronger-monotone equilibrium: entry pair, separating arc,
/// regime, and the pooled top when the reaction cap binds.
pub fn assemble_cse<T: Real>(m: &ModelPrimitives<T>, options: &SolveOptions<T>) -> Result<CseSolution<T>> {
    let certificates = check_assumptions(m, &options.grid);
    let failing: Vec<&str> = certificates
        .iter()
        .take(BLOCKING_CERTIFICATES)
        .filter(|c| c.status == CertStatus::Fail)
        .map(|c| c.name.as_str())
        .collect();
    if !failing.is_empty() && !options.waive_assumptions {
        return Err(Error::Precondition(format!(
            "assumption certificates failed: {}",
            failing.join("; ")
        )));
    }
    let mut metadata = SolveMetadata {
        entry_case: None,
        step: options.control.initial.to_f64().unwrap_or(f64::NAN),
        certificates,
        assumptions_waived: options.waive_assumptions,
        lipschitz_bound: None,
        notes: Vec::new(),
    };
    if m.reactions().is_degenerate() {
        return pooled_solution(m, metadata);
    }
    let pair = match solve_initial_pair(m)? {
        EntryOutcome::Pair(p) => p,
        EntryOutcome::EmptyMarket { reason } => {
            metadata.notes.push(reason);
            return Ok(empty_solution(m, Regime::EmptyMarket, metadata));
        }
    };
    let t_lo = m.reactions().lo;
    metadata.entry_case = Some(pair.case);
    if pair.case == EntryCase::AllTypesEnter && t_lo > T::zero() {
        metadata.notes.push(format!(
            "all types enter with a positive reaction floor; the lowest reaction is the supplied floor {t_lo} \
             rather than the cost of the lowest action"
        ));
    }
    let mut arc = integrate_belief(m, pair.s_ell, pair.z_ell, options.control)?;
    integrate_reaction(m, &mut arc, t_lo)?;
    let tau_top = arc.top_reaction();
    let zs = m.sender_types();
    let lip = lipschitz_estimate(|s, z| phi(m, s, z).ok(), (pair.s_ell, arc.top_action()), (zs.lo, zs.hi), 64);
    metadata.lipschitz_bound = lip.bound.to_f64();
    if lip.ill_conditioned {
        metadata.notes.push(format!("belief slope is ill-conditioned: Lipschitz estimate {}", lip.bound));
    }
    let regime = classify_regime(tau_top, &m.reactions());
    let x_ell = m.quantile_match(pair.z_ell)?;
    let mut solution = CseSolution {
        thresholds: Some(Thresholds {
            z_ell: pair.z_ell,
            s_ell: pair.s_ell,
            x_ell,
            jump: None,
        }),
        tau_top: Some(tau_top),
        ..empty_solution(m, regime, metadata)
    };
    if regime == Regime::Separating {
        solution.arc = table_from_arc(m, &arc)?;
        return Ok(solution);
    }
    let t_hi = m.reactions().cap().expect("capped regime");
    let jump = solve_jumping_pair(m, &arc, t_hi)?;
    if jump.at_entry(pair.z_ell) {
        let x_h = m.quantile_match(jump.z_h)?;
        solution.regime = Regime::Pooling;
        solution.metadata.notes.push(format!(
            "the entry partner prefers the pool at the cap {t_hi} to the bottom of the arc: all entrants pool"
        ));
        solution.thresholds = Some(Thresholds {
            z_ell: jump.z_h,
            s_ell: jump.s_h,
            x_ell: x_h,
            jump: Some(JumpThreshold {
                z_h: jump.z_h,
                s_h: jump.s_h,
                x_h,
            }),
        });
        solution.pooled = Some(PooledBlock {
            types: Interval::new(jump.z_h, zs.hi)?,
            action: jump.s_h,
            reaction: t_hi,
            receivers: Interval::new(x_h, m.receiver_types().hi)?,
        });
        return Ok(solution);
    }
    let ev = ArcEvaluator { m, arc: &arc };
    let end_reaction = ev.reaction(jump.arc_action)?;
    let keep = arc.actions.partition_point(|&s| s < jump.arc_action);
    let truncated = SeparatingArc {
        actions: arc.actions[..keep].iter().copied().chain([jump.arc_action]).collect(),
        beliefs: arc.beliefs[..keep].iter().copied().chain([jump.z_h]).collect(),
        mid_beliefs: Vec::new(),
        reactions: arc.reactions[..keep].iter().copied().chain([end_reaction]).collect(),
    };
    let x_h = m.quantile_match(jump.z_h)?;
    solution.arc = table_from_arc(m, &truncated)?;
    if let Some(th) = solution.thresholds.as_mut() {
        th.jump = Some(JumpThreshold {
            z_h: jump.z_h,
            s_h: jump.s_h,
            x_h,
        });
    }
    solution.pooled = Some(PooledBlock {
        types: Interval::new(jump.z_h, zs.hi)?,
        action: jump.s_h,
        reaction: t_hi,
        receivers: Interval::new(x_h, m.receiver_types().hi)?,
    });
    Ok(solution)
}
