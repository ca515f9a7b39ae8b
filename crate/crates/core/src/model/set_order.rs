use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relation between two finite sets of reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetOrderComparison {
    /// Every element of the first set is at most every element of the second.
    CompletelyLower,
    /// Lower in the strong set order only.
    StrongOnly,
    Unordered,
    Equal,
}

fn nonempty<T>(a: &[T], b: &[T]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("set order comparison needs nonempty sets".into()));
    }
    Ok(())
}

fn extreme<T: PartialOrd + Copy>(a: &[T], pick_max: bool) -> T {
    a.iter()
        .copied()
        .reduce(|m, x| if (x > m) == pick_max && x != m { x } else { m })
        .expect("nonempty")
}

/// `max(A) <= min(B)`.
pub fn stronger_set_leq<T: PartialOrd + Copy>(a: &[T], b: &[T]) -> Result<bool> {
    nonempty(a, b)?;
    Ok(extreme(a, true) <= extreme(b, false))
}

/// For all `a` in `A` and `b` in `B`: `min(a, b)` in `A` and `max(a, b)` in `B`.
pub fn strong_set_leq<T: PartialOrd + Copy>(a: &[T], b: &[T]) -> Result<bool> {
    nonempty(a, b)?;
    for &x in a {
        for &y in b {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            if !a.contains(&lo) || !b.contains(&hi) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Classifies the pair `(A, B)`.
pub fn compare_sets<T: PartialOrd + Copy>(a: &[T], b: &[T]) -> Result<SetOrderComparison> {
    nonempty(a, b)?;
    let same = a.iter().all(|x| b.contains(x)) && b.iter().all(|y| a.contains(y));
    Ok(if same {
        SetOrderComparison::Equal
    } else if stronger_set_leq(a, b)? {
        SetOrderComparison::CompletelyLower
    } else if strong_set_leq(a, b)? {
        SetOrderComparison::StrongOnly
    } else {
        SetOrderComparison::Unordered
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stronger_order_examples() {
        assert!(stronger_set_leq(&[1], &[1]).unwrap());
        assert!(!stronger_set_leq(&[0, 2], &[1, 3]).unwrap());
        assert!(stronger_set_leq(&[0, 1], &[1, 3]).unwrap());
        assert!(stronger_set_leq::<i32>(&[], &[1]).is_err());
    }

    #[test]
    fn strong_order_examples() {
        assert!(strong_set_leq(&[0, 1, 2], &[1, 2, 3]).unwrap());
        assert!(!strong_set_leq(&[2], &[1]).unwrap());
        assert!(strong_set_leq(&[1, 4, 7], &[1, 4, 7]).unwrap());
        assert!(strong_set_leq::<f64>(&[1.0], &[]).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(compare_sets(&[0, 1, 2], &[1, 2, 3]).unwrap(), SetOrderComparison::StrongOnly);
        assert_eq!(compare_sets(&[0, 1], &[1, 3]).unwrap(), SetOrderComparison::CompletelyLower);
        assert_eq!(compare_sets(&[2, 1], &[1, 2]).unwrap(), SetOrderComparison::Equal);
        assert_eq!(compare_sets(&[3], &[1]).unwrap(), SetOrderComparison::Unordered);
    }
}
