//! Scalar max/abs identities behind the simplex formulas, in closed form.
//! Each function returns the closed-form side; tests compare it against
//! direct evaluation.

use crate::error::{Error, Result};

/// `max{a, b}`, an upper bound for `max{a, |b - a|}` when `a, b >= 0`.
pub fn max_abs_bound(a: f64, b: f64) -> f64 {
    a.max(b)
}

fn extremes(set: &[f64]) -> Result<(f64, f64)> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(set
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a))))
}

/// `sup_{a∈A} |λ - a| = max{λ - inf A, sup A - λ}`.
pub fn sup_abs_over_set(set: &[f64], lambda: f64) -> Result<f64> {
    let (lo, hi) = extremes(set)?;
    Ok((lambda - lo).max(hi - lambda))
}

/// The same supremum written as `|λ - mid| + half-width`.
pub fn sup_abs_midpoint_form(set: &[f64], lambda: f64) -> Result<f64> {
    let (lo, hi) = extremes(set)?;
    Ok((lambda - (lo + hi) / 2.0).abs() + (hi - lo) / 2.0)
}

/// `sup_{a∈A} max{λ, |λ - a|} = max{λ, sup A - λ}` for `inf A >= 0`.
pub fn sup_max_over_set(set: &[f64], lambda: f64) -> Result<f64> {
    let (lo, hi) = extremes(set)?;
    if lo < 0.0 {
        return Err(Error::BadParams("set must be non-negative".into()));
    }
    Ok(lambda.max(hi - lambda))
}

/// `max{λ, |a - λ|} = max{λ, a - λ}` for `a >= 0`.
pub fn max_with_abs(a: f64, lambda: f64) -> f64 {
    lambda.max(a - lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(max_abs_bound(0.0, 5.0), 5.0);
        assert_eq!(0f64.max((5.0f64 - 0.0).abs()), 5.0);
        assert_eq!(sup_abs_over_set(&[1.0, 3.0], 2.0).unwrap(), 1.0);
        assert_eq!(sup_abs_midpoint_form(&[1.0, 3.0], 2.0).unwrap(), 1.0);
        assert_eq!(max_with_abs(3.0, 1.0), 2.0);
        assert_eq!(sup_max_over_set(&[0.5, 3.0], 1.0).unwrap(), 2.0);
        assert!(matches!(sup_abs_over_set(&[], 1.0), Err(Error::EmptySet)));
        assert!(sup_max_over_set(&[-1.0], 1.0).is_err());
    }
}
