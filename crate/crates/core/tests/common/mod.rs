#![allow(dead_code)]

use std::sync::Arc;

use signal_eq::model::{Interval, LinearOverType, ModelPrimitives, Multiplicative, ReactionCap, ReactionInterval, Uniform};

pub fn unit_uniform() -> Arc<Uniform<f64>> {
    Arc::new(Uniform::new(Interval::new(1.0, 2.0).unwrap()))
}

/// `v = x z`, `c = s / z`, both types uniform on `[1, 2]`.
pub fn linear_model(t_lo: f64, t_hi: Option<f64>) -> ModelPrimitives<f64> {
    let cap = t_hi.map_or(ReactionCap::Unbounded, ReactionCap::Finite);
    ModelPrimitives::new(
        Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
        Arc::new(LinearOverType::new(1.0, 0.0)),
        unit_uniform(),
        unit_uniform(),
        ReactionInterval::new(t_lo, cap).unwrap(),
    )
    .unwrap()
}

/// `v = (x - 1) z`, `c = s / (z - 1)`: the cost of the lowest type explodes.
pub fn shifted_model(t_lo: f64, t_hi: f64) -> ModelPrimitives<f64> {
    ModelPrimitives::new(
        Arc::new(Multiplicative::new(1.0, 0.0, 1.0)),
        Arc::new(LinearOverType::new(1.0, 1.0)),
        unit_uniform(),
        unit_uniform(),
        ReactionInterval::bounded(t_lo, t_hi).unwrap(),
    )
    .unwrap()
}
