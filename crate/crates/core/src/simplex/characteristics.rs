use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::correspondence::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Tolerance};
use crate::partition::{search, PartitionVisitor, SearchState, Separation};

use super::mst::alpha_plus_via_mst;

/// The partition characteristics of a space for a fixed block count `m`:
/// extreme values of `α(D)` and `diam D` over `D_m(X)`.
///
/// `alpha_plus` is `α_m` and `d_minus` is `d_m`. For `m = 1` both alphas are
/// the infinite sentinel and both diameters equal `diam`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Characteristics {
    pub m: usize,
    pub diam: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub alpha_minus: Separation,
    pub alpha_plus: Separation,
    pub d_minus: f64,
    pub d_plus: f64,
}

impl Characteristics {
    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCharacteristics(msg));
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        let mut reals = vec![("diam", self.diam), ("d_minus", self.d_minus), ("d_plus", self.d_plus)];
        if let Some(e) = self.eps {
            reals.push(("eps", e));
        }
        for (name, alpha) in [("alpha_minus", self.alpha_minus), ("alpha_plus", self.alpha_plus)] {
            if let Some(a) = alpha.finite() {
                reals.push((name, a));
            }
        }
        for (name, v) in reals {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} = {v} is not a finite non-negative number"));
            }
        }
        if self.m == 1 {
            if !(self.alpha_minus.is_infinite() && self.alpha_plus.is_infinite()) {
                return bad("m = 1 requires infinite alpha_minus and alpha_plus".into());
            }
            if !(tol.eq(self.d_minus, self.diam) && tol.eq(self.d_plus, self.diam)) {
                return bad("m = 1 requires d_minus = d_plus = diam".into());
            }
        } else if self.alpha_minus.is_infinite() || self.alpha_plus.is_infinite() {
            return bad("infinite alpha is only possible for m = 1".into());
        }
        if let (Some(lo), Some(hi)) = (self.alpha_minus.finite(), self.alpha_plus.finite()) {
            if !tol.le(lo, hi) {
                return bad(format!("alpha_minus {lo} > alpha_plus {hi}"));
            }
            if !tol.le(hi, self.diam) {
                return bad(format!("alpha_plus {hi} > diam {}", self.diam));
            }
            if let Some(e) = self.eps {
                if !tol.le(e, lo) {
                    return bad(format!("eps {e} > alpha_minus {lo}"));
                }
            }
        }
        if !tol.le(self.d_minus, self.d_plus) {
            return bad(format!("d_minus {} > d_plus {}", self.d_minus, self.d_plus));
        }
        if !tol.le(self.d_plus, self.diam) {
            return bad(format!("d_plus {} > diam {}", self.d_plus, self.diam));
        }
        if let Some(e) = self.eps {
            if !tol.le(e, self.diam) {
                return bad(format!("eps {e} > diam {}", self.diam));
            }
        }
        Ok(())
    }

    /// Characteristics of the unit circle for `m = 2`: the circle is
    /// connected, so every two-block partition has `α(D) = 0`, and no
    /// two-block partition avoids an antipodal pair, so `d_2 = diam = 2`.
    /// Not reproducible from finite samples.
    pub fn circle_m2() -> Self {
        Characteristics {
            m: 2,
            diam: 2.0,
            eps: Some(0.0),
            alpha_minus: Separation::Finite(0.0),
            alpha_plus: Separation::Finite(0.0),
            d_minus: 2.0,
            d_plus: 2.0,
        }
    }

    /// Characteristics of the simplex `λΔ_n` for block count `m`.
    pub fn simplex(n: usize, lambda: f64, m: usize) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::NonPositiveScale(lambda));
        }
        if m < 1 || m > n {
            return Err(Error::BadCardinality { n, m });
        }
        let (diam, eps) = if n == 1 { (0.0, 0.0) } else { (lambda, lambda) };
        let (alpha, d) = if m == 1 {
            (Separation::Infinite, diam)
        } else if m == n {
            (Separation::Finite(lambda), 0.0)
        } else {
            (Separation::Finite(lambda), lambda)
        };
        Ok(Characteristics {
            m,
            diam,
            eps: Some(eps),
            alpha_minus: alpha,
            alpha_plus: alpha,
            d_minus: d,
            d_plus: d,
        })
    }
}

/// Named characteristic sources: `circle-m2` and `simplex-<n>-<λ>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    CircleM2,
    Simplex { n: usize, lambda: f64 },
}

impl Preset {
    /// Characteristics for block count `m`; `None` uses the preset's own
    /// (only the circle has one).
    pub fn characteristics(&self, m: Option<usize>) -> Result<Characteristics> {
        match *self {
            Preset::CircleM2 => match m {
                None | Some(2) => Ok(Characteristics::circle_m2()),
                Some(m) => Err(Error::BadParams(format!(
                    "the circle preset is defined for m = 2 only, got m = {m}"
                ))),
            },
            Preset::Simplex { n, lambda } => {
                let m = m.ok_or_else(|| Error::BadParams("simplex presets need m".into()))?;
                Characteristics::simplex(n, lambda, m)
            }
        }
    }

    /// The finite space behind the preset, if there is one.
    pub fn space(&self) -> Option<FiniteMetricSpace> {
        match *self {
            Preset::CircleM2 => None,
            Preset::Simplex { n, lambda } => FiniteMetricSpace::simplex(n, lambda).ok(),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "circle-m2" {
            return Ok(Preset::CircleM2);
        }
        let unknown = || Error::BadParams(format!("unknown preset {s:?}"));
        let rest = s.strip_prefix("simplex-").ok_or_else(unknown)?;
        let (n, lambda) = rest.split_once('-').ok_or_else(unknown)?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        let lambda: f64 = lambda.parse().map_err(|_| unknown())?;
        if n == 0 || !(lambda.is_finite() && lambda > 0.0) {
            return Err(unknown());
        }
        Ok(Preset::Simplex { n, lambda })
    }
}

pub fn characteristics(x: &FiniteMetricSpace, m: usize) -> Result<Characteristics> {
    characteristics_with(x, m, DEFAULT_CAP)
}

/// Exact characteristics by pruned enumeration of `D_m(X)`. `cap` bounds
/// the search nodes of each of the four searches.
///
/// Panics if the enumerated `α_m⁺` disagrees with the MST value; the two
/// are independent routes to the same number.
pub fn characteristics_with(x: &FiniteMetricSpace, m: usize, cap: u64) -> Result<Characteristics> {
    let n = x.len();
    if m < 1 || m > n {
        return Err(Error::BadCardinality { n, m });
    }
    let tails = Tails::new(x);
    let mut a_min = AlphaMin {
        tails: &tails,
        target: x.eps(),
        best: Separation::Infinite,
    };
    search(x, m, &mut a_min, Some(cap))?;
    let mut a_max = AlphaMax {
        best: None,
    };
    search(x, m, &mut a_max, Some(cap))?;
    let mut d_min = DiamMin {
        best: f64::INFINITY,
    };
    search(x, m, &mut d_min, Some(cap))?;
    let mut d_max = DiamMax {
        tails: &tails,
        target: x.diam(),
        best: f64::NEG_INFINITY,
    };
    search(x, m, &mut d_max, Some(cap))?;

    let alpha_plus = a_max.best.expect("D_m(X) is non-empty");
    let via_mst = alpha_plus_via_mst(x, m)?;
    assert_eq!(
        alpha_plus, via_mst,
        "enumerated alpha_plus disagrees with the MST route"
    );
    Ok(Characteristics {
        m,
        diam: x.diam(),
        eps: Some(x.eps()),
        alpha_minus: a_min.best,
        alpha_plus,
        d_minus: d_min.best,
        d_plus: d_max.best,
    })
}

/// Extremes of distances over pairs `(i, j)`, `i < j`, with `j >= p`: the
/// pairs that still involve an unplaced point after `p` placements.
struct Tails {
    min: Vec<f64>,
    max: Vec<f64>,
}

impl Tails {
    fn new(x: &FiniteMetricSpace) -> Self {
        let n = x.len();
        let mut min = vec![f64::INFINITY; n + 1];
        let mut max = vec![f64::NEG_INFINITY; n + 1];
        for j in (0..n).rev() {
            let row = &x.row(j)[..j];
            min[j] = row.iter().copied().fold(min[j + 1], f64::min);
            max[j] = row.iter().copied().fold(max[j + 1], f64::max);
        }
        Tails { min, max }
    }
}

/// `α_m⁻`: a completion can only lower the separation down to the closest
/// pair that still involves an unplaced point. Stops at `ε(X)`.
struct AlphaMin<'t> {
    tails: &'t Tails,
    target: f64,
    best: Separation,
}

impl PartitionVisitor for AlphaMin<'_> {
    fn descend(&mut self, s: &SearchState<'_>) -> bool {
        let floor = s
            .separation()
            .min(Separation::from_f64(self.tails.min[s.placed()]));
        floor < self.best
    }

    fn complete(&mut self, s: &SearchState<'_>) -> ControlFlow<()> {
        if s.separation() < self.best {
            self.best = s.separation();
        }
        if self.best == Separation::Finite(self.target) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// `α_m⁺`: separation only shrinks along a branch.
struct AlphaMax {
    best: Option<Separation>,
}

impl PartitionVisitor for AlphaMax {
    fn descend(&mut self, s: &SearchState<'_>) -> bool {
        self.best.is_none_or(|b| s.separation() > b)
    }

    fn complete(&mut self, s: &SearchState<'_>) -> ControlFlow<()> {
        self.best = Some(self.best.map_or(s.separation(), |b| b.max(s.separation())));
        ControlFlow::Continue(())
    }
}

/// `d_m`: block diameters only grow along a branch.
struct DiamMin {
    best: f64,
}

impl PartitionVisitor for DiamMin {
    fn descend(&mut self, s: &SearchState<'_>) -> bool {
        s.max_block_diam() < self.best
    }

    fn complete(&mut self, s: &SearchState<'_>) -> ControlFlow<()> {
        self.best = self.best.min(s.max_block_diam());
        if self.best == 0.0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// `d_m⁺`: a completion can raise the largest block diameter at most to the
/// farthest pair that still involves an unplaced point. Stops at `diam X`.
struct DiamMax<'t> {
    tails: &'t Tails,
    target: f64,
    best: f64,
}

impl PartitionVisitor for DiamMax<'_> {
    fn descend(&mut self, s: &SearchState<'_>) -> bool {
        s.max_block_diam().max(self.tails.max[s.placed()]) > self.best
    }

    fn complete(&mut self, s: &SearchState<'_>) -> ControlFlow<()> {
        self.best = self.best.max(s.max_block_diam());
        if self.best == self.target {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}
