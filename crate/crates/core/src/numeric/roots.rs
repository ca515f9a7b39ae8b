use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Interval `[lo, hi]` on which a continuous function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
}

/// Finds a root of `f` in `[lo, hi]` by bisection.
///
/// Requires `f(lo)` and `f(hi)` to have opposite signs (a zero at either end
/// is returned immediately). Stops when the bracket is narrower than `x_tol`
/// or `|f| <= f_tol`.
pub fn bisect<T, F>(mut f: F, lo: T, hi: T, x_tol: T, f_tol: T, what: &str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Singularity(format!(
            "{what}: non-finite value at bracket end ({a}, {b})"
        )));
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(Error::Convergence(format!(
            "{what}: no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let half = lit::<T>(0.5);
    for _ in 0..400 {
        let m = a + (b - a) * half;
        let fm = f(m);
        if !fm.is_finite() {
            return Err(Error::Singularity(format!("{what}: non-finite value at {m}")));
        }
        if fm.abs() <= f_tol || (b - a).abs() <= x_tol || m == a || m == b {
            return Ok(m);
        }
        if (fm > T::zero()) == (fa > T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(a + (b - a) * half)
}

/// [`bisect`] for a fallible function; the first error raised by `f` wins
/// over the bisection outcome.
pub fn try_bisect<T, F>(mut f: F, lo: T, hi: T, x_tol: T, f_tol: T, what: &str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let mut failure = None;
    let root = bisect(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                T::nan()
            }
        },
        lo,
        hi,
        x_tol,
        f_tol,
        what,
    );
    match failure {
        Some(e) => Err(e),
        None => root,
    }
}

/// Doubles the distance above `lo` until `f` changes sign relative to `f(lo)`.
///
/// Returns the bracket, or `None` once `limit` is passed.
pub fn expand_bracket_up<T, F>(mut f: F, lo: T, initial_width: T, limit: T) -> Option<Bracket<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let f_lo = f(lo);
    let mut width = initial_width;
    let mut prev = lo;
    loop {
        let hi = lo + width;
        if hi > limit {
            return None;
        }
        let f_hi = f(hi);
        if f_hi.is_nan() {
            return None;
        }
        if (f_hi > T::zero()) != (f_lo > T::zero()) || f_hi == T::zero() {
            return Some(Bracket { lo: prev, hi });
        }
        prev = hi;
        width = width + width;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_square_root() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-15, 0.0, "sqrt").unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let e = bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0, "none").unwrap_err();
        assert!(matches!(e, Error::Convergence(_)));
    }

    #[test]
    fn expansion_brackets_distant_root() {
        let b = expand_bracket_up(|x: f64| x - 37.5, 0.0, 1.0, 1e6).unwrap();
        assert!(b.lo <= 37.5 && 37.5 <= b.hi);
        assert!(expand_bracket_up(|x: f64| x + 1.0, 0.0, 1.0, 100.0).is_none());
    }

    #[test]
    fn works_in_single_precision() {
        let r = bisect(|x: f32| x - 0.25, 0.0f32, 1.0, 1e-7, 0.0, "f32").unwrap();
        assert!((r - 0.25).abs() < 1e-6);
    }
}
