//! Gromov–Hausdorff distance from a finite space to the simplex `λΔ_m`.
//!
//! All values here are `2·d_GH(λΔ_m, X)`, the quantity the closed forms are
//! written in; halve it for the distance itself.
//!
//! Dispatch:
//! - `m = 1`: `λΔ_1` is a point, so the value is `diam X`.
//! - `m > #X`: `max{λ, diam X - λ}`.
//! - `m = #X`: `max{λ - ε(X), diam X - λ}`.
//! - otherwise: `min over D in D_m(X) of max{diam D, λ - α(D), diam X - λ}`,
//!   found by branch-and-bound over restricted-growth strings.

mod bounds;
mod characteristics;
mod mst;
mod sweep;

use std::fmt;
use std::ops::ControlFlow;

pub use bounds::{
    bounds_from_characteristics, case_applies, case_bound, classify_case, BoundValue, CaseTag,
    GhBound, Region,
};
pub use characteristics::{characteristics, characteristics_with, Characteristics, Preset};
pub use mst::{alpha_plus_via_mst, mst, MstEdge};
pub use sweep::{lambda_range, sweep_characteristics, sweep_space, validate_grid, SweepRow};

use crate::correspondence::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::partition::{search, Partition, PartitionVisitor, SearchState};

/// Which closed form or search produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `m = 1`: distance from a point.
    SinglePoint,
    /// `m > #X`.
    BiggerSimplex,
    /// `m = #X`.
    EqualCardinality,
    /// `m < #X`: infimum over `D_m(X)`.
    PartitionSearch,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::SinglePoint => "single-point",
            Branch::BiggerSimplex => "bigger-simplex",
            Branch::EqualCardinality => "equal-cardinality",
            Branch::PartitionSearch => "partition-enum",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SimplexDistance {
    /// `2·d_GH(λΔ_m, X)`.
    pub twice_gh: f64,
    pub branch: Branch,
    /// First minimizing partition in RGS order, when the search ran.
    pub argmin: Option<Partition>,
    /// Search nodes visited (0 for closed forms).
    pub nodes: u64,
}

impl SimplexDistance {
    pub fn gh(&self) -> f64 {
        self.twice_gh / 2.0
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveLambda(lambda))
    }
}

/// `2·d_GH(λΔ_m, X)` with the default search cap.
pub fn gh_to_simplex(x: &FiniteMetricSpace, m: usize, lambda: f64) -> Result<f64> {
    Ok(gh_to_simplex_with(x, m, lambda, DEFAULT_CAP)?.twice_gh)
}

pub fn gh_to_simplex_with(
    x: &FiniteMetricSpace,
    m: usize,
    lambda: f64,
    cap: u64,
) -> Result<SimplexDistance> {
    check_lambda(lambda)?;
    if m == 0 {
        return Err(Error::BadCardinality { n: x.len(), m });
    }
    let n = x.len();
    let closed = |twice_gh, branch| SimplexDistance {
        twice_gh,
        branch,
        argmin: None,
        nodes: 0,
    };
    if m == 1 {
        return Ok(closed(x.diam(), Branch::SinglePoint));
    }
    if m > n {
        return Ok(closed(lambda.max(x.diam() - lambda), Branch::BiggerSimplex));
    }
    if m == n {
        return Ok(closed(
            (lambda - x.eps()).max(x.diam() - lambda),
            Branch::EqualCardinality,
        ));
    }
    let floor = x.diam() - lambda;
    let mut best = BestPartition {
        lambda,
        floor,
        value: f64::INFINITY,
        argmin: None,
    };
    let stats = search(x, m, &mut best, Some(cap))?;
    Ok(SimplexDistance {
        twice_gh: best.value,
        branch: Branch::PartitionSearch,
        argmin: best.argmin,
        nodes: stats.nodes,
    })
}

/// Minimizes `max{diam D, λ - α(D), diam X - λ}`.
struct BestPartition {
    lambda: f64,
    floor: f64,
    value: f64,
    argmin: Option<Partition>,
}

impl BestPartition {
    fn objective(&self, state: &SearchState<'_>) -> f64 {
        let mut v = state.max_block_diam().max(self.floor);
        if let Some(deficit) = state.separation().deficit(self.lambda) {
            v = v.max(deficit);
        }
        v
    }
}

impl PartitionVisitor for BestPartition {
    fn descend(&mut self, state: &SearchState<'_>) -> bool {
        // every term of the objective is monotone along a branch
        self.objective(state) < self.value
    }

    fn complete(&mut self, state: &SearchState<'_>) -> ControlFlow<()> {
        let v = self.objective(state);
        if v < self.value {
            self.value = v;
            self.argmin = Some(state.to_partition());
        }
        // diam X - λ is a lower bound for every partition
        if self.value <= self.floor {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partitions;

    fn e1() -> FiniteMetricSpace {
        FiniteMetricSpace::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 2.0],
            vec![2.0, 2.0, 0.0],
        ])
        .unwrap()
    }

    /// Plain minimum over the partition stream, no pruning.
    fn by_stream(x: &FiniteMetricSpace, m: usize, lambda: f64) -> f64 {
        Partitions::new(x.len(), m)
            .unwrap()
            .map(|d| {
                let mut v = d.diam(x).max(x.diam() - lambda);
                if let Some(t) = d.alpha(x).deficit(lambda) {
                    v = v.max(t);
                }
                v
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn point_examples() {
        let p = FiniteMetricSpace::point();
        assert_eq!(gh_to_simplex(&p, 1, 3.0).unwrap(), 0.0);
        for m in 2..5 {
            assert_eq!(gh_to_simplex(&p, m, 3.0).unwrap(), 3.0);
        }
    }

    #[test]
    fn e1_examples() {
        let x = e1();
        let r = gh_to_simplex_with(&x, 2, 1.0, DEFAULT_CAP).unwrap();
        assert_eq!(r.twice_gh, 1.0);
        assert_eq!(r.gh(), 0.5);
        assert_eq!(r.branch, Branch::PartitionSearch);
        assert_eq!(r.argmin.unwrap().rgs(), &[0, 0, 1]);
        let eq = gh_to_simplex_with(&x, 3, 1.0, DEFAULT_CAP).unwrap();
        assert_eq!((eq.twice_gh, eq.branch), (1.0, Branch::EqualCardinality));
        let big = gh_to_simplex_with(&x, 5, 1.0, DEFAULT_CAP).unwrap();
        assert_eq!((big.twice_gh, big.branch), (1.0, Branch::BiggerSimplex));
        assert_eq!(gh_to_simplex(&x, 1, 7.0).unwrap(), 2.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let x = e1();
        assert!(matches!(gh_to_simplex(&x, 2, 0.0), Err(Error::NonPositiveLambda(_))));
        assert!(matches!(gh_to_simplex(&x, 2, -1.0), Err(Error::NonPositiveLambda(_))));
        assert!(matches!(gh_to_simplex(&x, 0, 1.0), Err(Error::BadCardinality { .. })));
        let big = FiniteMetricSpace::from_rows(
            (0..12)
                .map(|i| (0..12).map(|j| if i == j { 0.0 } else { 1.0 + ((i * j) % 3) as f64 * 0.25 }).collect())
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            gh_to_simplex_with(&big, 6, 0.5, 100),
            Err(Error::EnumerationTooLarge { cap: 100 })
        ));
    }

    #[test]
    fn pruned_search_matches_plain_stream() {
        let x = FiniteMetricSpace::from_rows(vec![
            vec![0.0, 3.0, 4.0, 5.0, 2.0, 6.0],
            vec![3.0, 0.0, 5.0, 4.0, 3.0, 5.0],
            vec![4.0, 5.0, 0.0, 3.0, 4.0, 4.0],
            vec![5.0, 4.0, 3.0, 0.0, 3.0, 2.0],
            vec![2.0, 3.0, 4.0, 3.0, 0.0, 4.0],
            vec![6.0, 5.0, 4.0, 2.0, 4.0, 0.0],
        ])
        .unwrap();
        for m in 2..6 {
            for k in 1..=28 {
                let lambda = k as f64 * 0.5;
                let r = gh_to_simplex_with(&x, m, lambda, DEFAULT_CAP).unwrap();
                assert_eq!(r.twice_gh, by_stream(&x, m, lambda), "m={m} λ={lambda}");
                let argmin = r.argmin.unwrap();
                let mut v = argmin.diam(&x).max(x.diam() - lambda);
                if let Some(t) = argmin.alpha(&x).deficit(lambda) {
                    v = v.max(t);
                }
                assert_eq!(v, r.twice_gh);
            }
        }
    }
}
