use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Tolerance};

use super::bounds::{bounds_from_characteristics, CaseTag, GhBound, Region};
use super::characteristics::{characteristics_with, Characteristics};
use super::gh_to_simplex_with;

/// One point of the curve `λ ↦ 2·d_GH(λΔ_m, X)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub bound: GhBound,
    /// The enumerated value, when the input was a finite space.
    pub value: Option<f64>,
}

pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::InvalidGrid(format!("{bad} is not a positive number")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid("grid is not strictly increasing".into()));
    }
    Ok(())
}

/// `min, min + step, ...` up to `max` (inclusive, with a relative slack of
/// `1e-9 · step` so that decimal steps land on `max`). Each point is computed
/// as `min + k·step`, not by accumulation.
pub fn lambda_range(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
    }
    if !(min.is_finite() && max.is_finite()) || max < min {
        return Err(Error::InvalidGrid(format!("empty range [{min}, {max}]")));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|k| min + k as f64 * step).collect();
    validate_grid(&grid)?;
    Ok(grid)
}

/// Bounds along a grid for supplied characteristics.
pub fn sweep_characteristics(c: &Characteristics, grid: &[f64], tol: Tolerance) -> Result<Vec<SweepRow>> {
    validate_grid(grid)?;
    c.validate(tol)?;
    grid.iter()
        .map(|&lambda| {
            Ok(SweepRow {
                lambda,
                bound: bounds_from_characteristics(c, lambda, tol)?,
                value: None,
            })
        })
        .collect()
}

/// Bounds along a grid for a finite space, each with the enumerated value.
///
/// For `m > #X` and `2 <= m = #X` the closed forms are reported directly.
/// Grid points are evaluated in parallel on the current rayon pool; the
/// output order is the grid order.
pub fn sweep_space(
    x: &FiniteMetricSpace,
    m: usize,
    grid: &[f64],
    tol: Tolerance,
    cap: u64,
) -> Result<Vec<SweepRow>> {
    validate_grid(grid)?;
    if m == 0 {
        return Err(Error::BadCardinality { n: x.len(), m });
    }
    let n = x.len();
    let (diam, eps) = (x.diam(), x.eps());
    if m > n || (m == n && m >= 2) {
        return Ok(grid
            .iter()
            .map(|&lambda| {
                let bound = if m > n {
                    let region = if lambda <= diam / 2.0 { Region::Left } else { Region::Right };
                    GhBound::exact(lambda.max(diam - lambda), CaseTag::BiggerSimplex, region)
                } else {
                    let region = if lambda <= (diam + eps) / 2.0 { Region::Left } else { Region::Right };
                    GhBound::exact((lambda - eps).max(diam - lambda), CaseTag::EqualCardinality, region)
                };
                SweepRow {
                    lambda,
                    bound,
                    value: Some(bound.lo()),
                }
            })
            .collect());
    }
    let c = characteristics_with(x, m, cap)?;
    grid.par_iter()
        .map(|&lambda| {
            Ok(SweepRow {
                lambda,
                bound: bounds_from_characteristics(&c, lambda, tol)?,
                value: Some(gh_to_simplex_with(x, m, lambda, cap)?.twice_gh),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::DEFAULT_CAP;
    use crate::simplex::BoundValue;

    const T: Tolerance = Tolerance::DEFAULT;

    #[test]
    fn grids() {
        assert_eq!(lambda_range(0.5, 4.0, 0.5).unwrap().len(), 8);
        assert_eq!(lambda_range(0.1, 0.3, 0.1).unwrap().len(), 3);
        assert!(lambda_range(1.0, 0.5, 0.1).is_err());
        assert!(lambda_range(0.0, 1.0, 0.5).is_err());
        assert!(validate_grid(&[]).is_err());
        assert!(validate_grid(&[1.0, 1.0]).is_err());
        assert!(validate_grid(&[-1.0]).is_err());
    }

    #[test]
    fn point_sweep() {
        let p = FiniteMetricSpace::point();
        let rows = sweep_space(&p, 2, &[1.0, 2.0, 3.0], T, DEFAULT_CAP).unwrap();
        for r in rows {
            assert_eq!(r.bound.value, BoundValue::Exact(r.lambda));
            assert_eq!(r.value, Some(r.lambda));
        }
    }

    #[test]
    fn circle_sweep() {
        let rows = sweep_characteristics(&Characteristics::circle_m2(), &[1.0, 2.0, 3.0], T).unwrap();
        let vals: Vec<_> = rows.iter().map(|r| r.bound.value).collect();
        assert_eq!(
            vals,
            vec![BoundValue::Exact(2.0), BoundValue::Exact(2.0), BoundValue::Exact(3.0)]
        );
    }

    #[test]
    fn e1_sweep() {
        let x = FiniteMetricSpace::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.0],
            vec![2.0, 2.0, 0.0],
        ])
        .unwrap();
        let rows = sweep_space(&x, 2, &[0.5, 1.0, 3.0, 5.0], T, DEFAULT_CAP).unwrap();
        let vals: Vec<_> = rows.iter().map(|r| r.bound.value).collect();
        assert_eq!(
            vals,
            vec![
                BoundValue::Exact(1.5),
                BoundValue::Exact(1.0),
                BoundValue::Interval { lo: 1.0, hi: 2.0 },
                BoundValue::Exact(3.0)
            ]
        );
        assert_eq!(rows[2].value, Some(1.0));
        for r in &rows {
            assert!(r.bound.contains(r.value.unwrap(), T));
        }
    }
}
