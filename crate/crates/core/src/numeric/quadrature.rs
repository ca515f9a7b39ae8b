use crate::scalar::{lit, Real};

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, tol: T) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    if a == b {
        return T::zero();
    }
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * lit(0.5);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / lit(6.0) * (fa + lit::<T>(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T, F>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    let half = lit::<T>(0.5);
    let m = (a + b) * half;
    let lm = (a + m) * half;
    let rm = (m + b) * half;
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= lit::<T>(15.0) * tol {
        return left + right + delta / lit(15.0);
    }
    recurse(f, a, m, fa, flm, fm, left, tol * half, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, tol * half, depth - 1)
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite five-point Gauss-Legendre rule with `panels` equal panels.
pub fn gauss_legendre<T, F>(f: F, a: T, b: T, panels: usize) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    let panels = panels.max(1);
    let width = (b - a) / T::from_usize(panels).unwrap();
    let half = width * lit(0.5);
    let mut total = T::zero();
    for p in 0..panels {
        let mid = a + width * T::from_usize(p).unwrap() + half;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            total = total + lit::<T>(*w) * f(mid + half * lit(*x));
        }
    }
    total * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_matches_closed_forms() {
        let v = adaptive_simpson(|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-11);
        let v = adaptive_simpson(|x: f64| (3.0 * x + 1.0).powf(-1.0 / 3.0), 0.0, 7.0 / 3.0, 1e-12);
        assert!((v - 1.5).abs() < 1e-10);
    }

    #[test]
    fn gauss_legendre_is_exact_for_degree_nine() {
        let v = gauss_legendre(|x: f64| x.powi(9) + x.powi(2), 0.0, 1.0, 1);
        assert!((v - (0.1 + 1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn empty_interval_integrates_to_zero() {
        assert_eq!(adaptive_simpson(|x: f64| x, 2.0, 2.0, 1e-9), 0.0);
    }
}
