use crate::error::{Error, Result};
use crate::model::ModelPrimitives;
use crate::numeric::{bisect, golden_section_max};
use crate::scalar::{lit, Real};

/// Action maximising the match surplus `v(x, s, z) - c(s, z)` over `s >= 0`.
///
/// Returns `0` when the surplus does not rise above its value at the null
/// action. Fails with a model error when no finite maximiser exists.
pub fn bilaterally_efficient_action<T: Real>(m: &ModelPrimitives<T>, x: T, z: T) -> Result<T> {
    let objective = |s: T| m.v(x, s, z) - m.c(s, z);
    let slope = |s: T| m.v_s(x, s, z) - m.c_s(s, z);
    let limit = lit::<T>(1e12);
    let mut hi = T::one();
    while !(slope(hi) < T::zero()) {
        hi = hi + hi;
        if hi > limit {
            return Err(Error::Model(format!(
                "match surplus of (x={x}, z={z}) keeps increasing in the action"
            )));
        }
    }
    let tol = lit::<T>(1e-10);
    let mut best = golden_section_max(objective, T::zero(), hi, tol);
    // polish on the derivative where it changes sign around the golden-section estimate
    let width = lit::<T>(1e-6) * T::one().max(best);
    let lo = (best - width).max(lit(1e-14));
    let up = (best + width).min(hi);
    if lo < up && slope(lo) > T::zero() && slope(up) < T::zero() {
        best = bisect(slope, lo, up, lit(1e-15), T::zero(), "efficient action")?;
    }
    if objective(T::zero()) >= objective(best) {
        return Ok(T::zero());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::{FnSurplus, Interval, LinearOverType, Multiplicative, PowerCost, ReactionInterval, Uniform};

    fn uniform() -> Arc<Uniform<f64>> {
        Arc::new(Uniform::new(Interval::new(1.0, 2.0).unwrap()))
    }

    #[test]
    fn costly_signal_is_not_efficient() {
        let m = ModelPrimitives::new(
            Arc::new(Multiplicative::new(1.0, 0.0, 0.0)),
            Arc::new(LinearOverType::new(1.0, 0.0)),
            uniform(),
            uniform(),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap();
        for (x, z) in [(1.0, 1.0), (1.5, 1.2), (2.0, 2.0)] {
            assert_eq!(bilaterally_efficient_action(&m, x, z).unwrap(), 0.0);
        }
    }

    #[test]
    fn interior_optimum_matches_brute_force() {
        let m = ModelPrimitives::new(
            Arc::new(
                FnSurplus::new(|x: f64, s: f64, z: f64| x * z + 2.0 * s.sqrt() * x)
                    .with_d_s(|x, s, _z| if s > 0.0 { x / s.sqrt() } else { f64::INFINITY }),
            ),
            Arc::new(PowerCost { k: 1.0, m: 2.0, r: 1.0 }),
            uniform(),
            uniform(),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap();
        let s = bilaterally_efficient_action(&m, 1.0, 1.0).unwrap();
        let closed = 0.5f64.powf(2.0 / 3.0);
        let mut grid_best = (0.0, f64::NEG_INFINITY);
        let step = 1e-7;
        let mut g = closed - 1e-3;
        while g < closed + 1e-3 {
            let val = 2.0 * g.sqrt() - g * g;
            if val > grid_best.1 {
                grid_best = (g, val);
            }
            g += step;
        }
        assert!((s - closed).abs() < 1e-9, "{s} vs {closed}");
        assert!((s - grid_best.0).abs() < 1e-6);
    }

    #[test]
    fn unbounded_surplus_is_a_model_error() {
        let m = ModelPrimitives::new(
            Arc::new(Multiplicative::new(1.0, 1.0, 0.0)),
            Arc::new(FreeAction),
            uniform(),
            uniform(),
            ReactionInterval::unbounded(0.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(bilaterally_efficient_action(&m, 1.5, 1.5), Err(Error::Model(_))));
    }

    struct FreeAction;
    impl crate::model::Cost<f64> for FreeAction {
        fn value(&self, _s: f64, _z: f64) -> f64 {
            0.0
        }
        fn d_s(&self, _s: f64, _z: f64) -> Option<f64> {
            Some(0.0)
        }
        fn d_z(&self, _s: f64, _z: f64) -> Option<f64> {
            Some(0.0)
        }
    }
}
