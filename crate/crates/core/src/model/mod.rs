//! Model primitives of the continuum market, set orders and assumption certifiers.

pub mod certify;
pub mod distribution;
pub mod families;
pub mod interval;
pub mod primitives;
pub mod set_order;

pub use certify::{
    certify_sender_grid, check_assumptions, check_sender_monotone_supermodular, AssumptionGrid, CertStatus,
    Certificate,
};
pub use distribution::{Distribution, LinearDensity, Uniform};
pub use families::{CobbLike, FnCost, FnSurplus, LinearOverType, Multiplicative, PowerCost, RootAction};
pub use interval::{Interval, ReactionCap, ReactionInterval};
pub use primitives::{Cost, ModelPrimitives, Surplus};
pub use set_order::{compare_sets, strong_set_leq, stronger_set_leq, SetOrderComparison};
