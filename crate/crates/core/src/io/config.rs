use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cse::SolveOptions;
use crate::error::{Error, Result};
use crate::model::{
    CobbLike, Cost, Distribution, Interval, LinearDensity, LinearOverType, ModelPrimitives, Multiplicative, PowerCost,
    ReactionCap, ReactionInterval, RootAction, Surplus, Uniform,
};
use crate::numeric::StepControl;
use crate::verify::VerifyOptions;

/// Smallest admissible sample or grid size.
pub const MIN_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurplusConfig {
    /// `v = (x - x0) (a z + b s)`
    Multiplicative {
        a: f64,
        #[serde(default)]
        b: f64,
        #[serde(default)]
        x0: f64,
    },
    /// `v = x^p z^q (1 + s)^r`
    CobbLike { p: f64, q: f64, r: f64 },
    /// `v = a x z + b x sqrt(s)`
    RootAction { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CostConfig {
    /// `c = k s / (z - z0)`
    LinearOverType {
        k: f64,
        #[serde(default)]
        z0: f64,
    },
    /// `c = k s^m / z^r`
    Power { k: f64, m: f64, r: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub surplus: SurplusConfig,
    pub cost: CostConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionConfig {
    Uniform { lo: f64, hi: f64 },
    /// Density linear in the type, tilted up (`tilt > 0`) or down.
    Linear { lo: f64, hi: f64, tilt: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReactionConfig {
    pub lo: f64,
    /// Omitted for an unbounded interval.
    pub hi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub step: f64,
    pub floor: f64,
    pub local_tol: f64,
    pub max_steps: usize,
    pub waive_assumptions: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let c = StepControl::DEFAULT;
        SolverConfig {
            step: c.initial,
            floor: c.floor,
            local_tol: c.local_tol,
            max_steps: c.max_steps,
            waive_assumptions: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub tolerance: f64,
    pub clearing_tolerance: f64,
    pub foc_tolerance: f64,
    pub type_points: usize,
    pub receiver_points: usize,
    pub stability_samples: usize,
    pub clearing_intervals: usize,
    pub offpath_points: usize,
    pub offpath_reach: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let v = VerifyOptions::default();
        VerifyConfig {
            tolerance: v.tolerance,
            clearing_tolerance: v.clearing_tolerance,
            foc_tolerance: v.foc_tolerance,
            type_points: v.type_points,
            receiver_points: v.receiver_points,
            stability_samples: v.stability_samples,
            clearing_intervals: v.clearing_intervals,
            offpath_points: v.offpath_points,
            offpath_reach: v.offpath_reach,
            seed: v.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Sender types sampled for `sigma.csv` and `figure1.csv`.
    pub table_points: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { table_points: 1001 }
    }
}

/// Run configuration read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub senders: DistributionConfig,
    pub receivers: DistributionConfig,
    pub reactions: ReactionConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite and >= 0, got {v}")))
    }
}

fn grid(name: &str, n: usize) -> Result<()> {
    if n >= MIN_GRID {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be at least {MIN_GRID}, got {n}")))
    }
}

impl DistributionConfig {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            DistributionConfig::Uniform { lo, hi } | DistributionConfig::Linear { lo, hi, .. } => (lo, hi),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let (lo, hi) = self.bounds();
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Config(format!("{name}: need finite lo < hi, got [{lo}, {hi}]")));
        }
        if let DistributionConfig::Linear { tilt, .. } = *self {
            if !(tilt.abs() < 1.0) {
                return Err(Error::Config(format!("{name}: tilt must lie in (-1, 1), got {tilt}")));
            }
        }
        Ok(())
    }

    fn build(&self) -> Result<Arc<dyn Distribution<f64>>> {
        let (lo, hi) = self.bounds();
        let range = Interval::new(lo, hi)?;
        Ok(match *self {
            DistributionConfig::Uniform { .. } => Arc::new(Uniform::new(range)),
            DistributionConfig::Linear { tilt, .. } => Arc::new(LinearDensity::new(range, tilt)?),
        })
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks tolerances, grid sizes and family parameter ranges.
    pub fn validate(&self) -> Result<()> {
        self.senders.validate("senders")?;
        self.receivers.validate("receivers")?;
        let (z_lo, _) = self.senders.bounds();
        let (x_lo, _) = self.receivers.bounds();
        match self.model.surplus {
            SurplusConfig::Multiplicative { a, b, x0 } => {
                positive("surplus.a", a)?;
                nonnegative("surplus.b", b)?;
                if !(x0.is_finite() && x0 <= x_lo) {
                    return Err(Error::Config(format!("surplus.x0 must not exceed the lowest receiver {x_lo}")));
                }
            }
            SurplusConfig::CobbLike { p, q, r } => {
                positive("surplus.p", p)?;
                positive("surplus.q", q)?;
                nonnegative("surplus.r", r)?;
                if !(x_lo > 0.0 && z_lo > 0.0) {
                    return Err(Error::Config("cobb_like needs positive type supports".into()));
                }
            }
            SurplusConfig::RootAction { a, b } => {
                positive("surplus.a", a)?;
                nonnegative("surplus.b", b)?;
            }
        }
        match self.model.cost {
            CostConfig::LinearOverType { k, z0 } => {
                positive("cost.k", k)?;
                if !(z0.is_finite() && z0 <= z_lo) {
                    return Err(Error::Config(format!("cost.z0 must not exceed the lowest sender {z_lo}")));
                }
            }
            CostConfig::Power { k, m, r } => {
                positive("cost.k", k)?;
                if !(m.is_finite() && m >= 1.0) {
                    return Err(Error::Config(format!("cost.m must be >= 1, got {m}")));
                }
                positive("cost.r", r)?;
                if !(z_lo > 0.0) {
                    return Err(Error::Config("power cost needs positive sender types".into()));
                }
            }
        }
        nonnegative("reactions.lo", self.reactions.lo)?;
        if let Some(hi) = self.reactions.hi {
            if !(hi.is_finite() && hi >= self.reactions.lo) {
                return Err(Error::Config(format!("reactions.hi must be finite and >= lo, got {hi}")));
            }
        }
        let s = &self.solver;
        positive("solver.step", s.step)?;
        positive("solver.floor", s.floor)?;
        positive("solver.local_tol", s.local_tol)?;
        if s.floor > s.step {
            return Err(Error::Config("solver.floor must not exceed solver.step".into()));
        }
        grid("solver.max_steps", s.max_steps)?;
        let v = &self.verify;
        positive("verify.tolerance", v.tolerance)?;
        positive("verify.clearing_tolerance", v.clearing_tolerance)?;
        positive("verify.foc_tolerance", v.foc_tolerance)?;
        positive("verify.offpath_reach", v.offpath_reach)?;
        grid("verify.type_points", v.type_points)?;
        grid("verify.receiver_points", v.receiver_points)?;
        grid("verify.stability_samples", v.stability_samples)?;
        grid("verify.clearing_intervals", v.clearing_intervals)?;
        grid("verify.offpath_points", v.offpath_points)?;
        grid("output.table_points", self.output.table_points)?;
        Ok(())
    }

    pub fn build_primitives(&self) -> Result<ModelPrimitives<f64>> {
        let surplus: Arc<dyn Surplus<f64>> = match self.model.surplus {
            SurplusConfig::Multiplicative { a, b, x0 } => Arc::new(Multiplicative::new(a, b, x0)),
            SurplusConfig::CobbLike { p, q, r } => Arc::new(CobbLike { p, q, r }),
            SurplusConfig::RootAction { a, b } => Arc::new(RootAction { a, b }),
        };
        let cost: Arc<dyn Cost<f64>> = match self.model.cost {
            CostConfig::LinearOverType { k, z0 } => Arc::new(LinearOverType::new(k, z0)),
            CostConfig::Power { k, m, r } => Arc::new(PowerCost { k, m, r }),
        };
        let cap = self.reactions.hi.map_or(ReactionCap::Unbounded, ReactionCap::Finite);
        ModelPrimitives::new(
            surplus,
            cost,
            self.senders.build()?,
            self.receivers.build()?,
            ReactionInterval::new(self.reactions.lo, cap)?,
        )
    }

    pub fn solve_options(&self) -> SolveOptions<f64> {
        let s = &self.solver;
        SolveOptions {
            control: StepControl {
                initial: s.step,
                floor: s.floor,
                local_tol: s.local_tol,
                max_steps: s.max_steps,
            },
            waive_assumptions: s.waive_assumptions,
            ..SolveOptions::default()
        }
    }

    pub fn verify_options(&self) -> VerifyOptions {
        let v = &self.verify;
        VerifyOptions {
            tolerance: v.tolerance,
            clearing_tolerance: v.clearing_tolerance,
            foc_tolerance: v.foc_tolerance,
            type_points: v.type_points,
            receiver_points: v.receiver_points,
            stability_samples: v.stability_samples,
            clearing_intervals: v.clearing_intervals,
            offpath_points: v.offpath_points,
            offpath_reach: v.offpath_reach,
            seed: v.seed,
        }
    }
}
