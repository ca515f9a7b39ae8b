use crate::scalar::{lit, Real};

/// Estimates above this are reported as ill-conditioned.
pub const ILL_CONDITIONED: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzEstimate<T> {
    /// Largest finite-difference slope in the type direction.
    pub bound: T,
    pub ill_conditioned: bool,
    /// Grid point attaining the bound.
    pub at: (T, T),
}

/// Empirical Lipschitz constant of `slope(s, z)` in `z` over the rectangle
/// `actions x types`, from forward differences on a `points x points` grid.
/// A `None` or non-finite evaluation counts as an infinite slope.
pub fn lipschitz_estimate<T, F>(slope: F, actions: (T, T), types: (T, T), points: usize) -> LipschitzEstimate<T>
where
    T: Real,
    F: Fn(T, T) -> Option<T>,
{
    let n = points.max(2);
    let at = |lo: T, hi: T, i: usize| lo + (hi - lo) * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
    let dz = (types.1 - types.0) / T::from_usize(n - 1).unwrap();
    let mut best = LipschitzEstimate {
        bound: T::zero(),
        ill_conditioned: false,
        at: (actions.0, types.0),
    };
    for i in 0..n {
        let s = at(actions.0, actions.1, i);
        let mut prev = slope(s, types.0);
        for j in 1..n {
            let z = at(types.0, types.1, j);
            let cur = slope(s, z);
            let d = match (prev, cur) {
                (Some(a), Some(b)) if a.is_finite() && b.is_finite() && dz > T::zero() => ((b - a) / dz).abs(),
                _ if dz > T::zero() => T::infinity(),
                _ => T::zero(),
            };
            if d > best.bound || (d.is_nan() && !best.bound.is_nan()) {
                best.bound = d;
                best.at = (s, z);
            }
            prev = cur;
        }
    }
    best.ill_conditioned = !(best.bound <= lit(ILL_CONDITIONED));
    best
}
