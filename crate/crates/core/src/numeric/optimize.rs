use crate::scalar::{lit, Real};

/// Golden-section search for a maximiser of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<T, F>(f: F, a: T, b: T, tol: T) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    let inv_phi = lit::<T>(0.618_033_988_749_894_9);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..300 {
        if (hi - lo).abs() <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) * lit(0.5)
}
