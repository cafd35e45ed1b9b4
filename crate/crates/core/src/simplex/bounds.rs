//! Exact values and certified intervals for `g(λ) = 2·d_GH(λΔ_m, X)` from
//! characteristics alone.
//!
//! The general position is described by two points on the `(λ, g)` plane:
//! `A`, where `diam X - λ` meets `λ - α_m⁻`, at height `(diam - α⁻)/2`, and
//! `B`, where `diam X - λ` meets `λ - α_m⁺`, at height `(diam - α⁺)/2`,
//! compared with the strip `d_m <= g <= d_m⁺`. Four placements give four
//! piecewise forms; in each the left and right regions are exact and the
//! middle region (when non-degenerate) is an interval.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::Tolerance;

use super::characteristics::Characteristics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    BiggerSimplex,
    EqualCardinality,
    /// `α_m⁺ = 0`.
    AlphaZero,
    /// `d_m = diam X`.
    DmEqualsDiam,
    /// `A` below the strip.
    Case1,
    /// `A` inside the strip.
    Case2,
    /// `A` above the strip, `B` at most at its upper line.
    Case3_1,
    /// `B` above the strip.
    Case3_2,
}

impl CaseTag {
    pub const GENERAL: [CaseTag; 4] = [CaseTag::Case1, CaseTag::Case2, CaseTag::Case3_1, CaseTag::Case3_2];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::BiggerSimplex => "BiggerSimplex",
            CaseTag::EqualCardinality => "EqualCardinality",
            CaseTag::AlphaZero => "AlphaZero",
            CaseTag::DmEqualsDiam => "DmEqualsDiam",
            CaseTag::Case1 => "1",
            CaseTag::Case2 => "2",
            CaseTag::Case3_1 => "3.1",
            CaseTag::Case3_2 => "3.2",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    Left,
    Middle,
    Right,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Left => "Left",
            Region::Middle => "Middle",
            Region::Right => "Right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum BoundValue {
    Exact(f64),
    Interval { lo: f64, hi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GhBound {
    pub value: BoundValue,
    pub case: CaseTag,
    pub region: Region,
}

impl GhBound {
    pub fn exact(v: f64, case: CaseTag, region: Region) -> Self {
        GhBound {
            value: BoundValue::Exact(v),
            case,
            region,
        }
    }

    fn interval(lo: f64, hi: f64, case: CaseTag) -> Self {
        GhBound {
            // rounding can flip a degenerate interval by an ulp
            value: BoundValue::Interval { lo, hi: hi.max(lo) },
            case,
            region: Region::Middle,
        }
    }

    pub fn lo(&self) -> f64 {
        match self.value {
            BoundValue::Exact(v) => v,
            BoundValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match self.value {
            BoundValue::Exact(v) => v,
            BoundValue::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, BoundValue::Exact(_))
    }

    /// `lo - tol <= v <= hi + tol`.
    pub fn contains(&self, v: f64, tol: Tolerance) -> bool {
        tol.le(self.lo(), v) && tol.le(v, self.hi())
    }
}

/// Quantities shared by the case formulas, with `α` finite.
struct Terms {
    diam: f64,
    a_lo: f64,
    a_hi: f64,
    d_lo: f64,
    d_hi: f64,
}

fn terms(c: &Characteristics) -> Result<Terms> {
    match (c.alpha_minus.finite(), c.alpha_plus.finite()) {
        (Some(a_lo), Some(a_hi)) => Ok(Terms {
            diam: c.diam,
            a_lo,
            a_hi,
            d_lo: c.d_minus,
            d_hi: c.d_plus,
        }),
        _ => Err(Error::InvalidCharacteristics(
            "only the d_m = diam form is defined for m = 1".into(),
        )),
    }
}

/// Whether the hypothesis of `case` holds for `c` (up to `tol`).
pub fn case_applies(case: CaseTag, c: &Characteristics, tol: Tolerance) -> Result<bool> {
    c.validate(tol)?;
    if case == CaseTag::DmEqualsDiam {
        return Ok(tol.eq(c.d_minus, c.diam));
    }
    if matches!(case, CaseTag::BiggerSimplex | CaseTag::EqualCardinality) {
        return Ok(false);
    }
    let t = terms(c)?;
    let a_height = t.diam - t.a_lo;
    let b_height = t.diam - t.a_hi;
    Ok(match case {
        CaseTag::AlphaZero => t.a_hi == 0.0 || tol.eq(t.a_hi, 0.0),
        CaseTag::Case1 => tol.le(a_height, 2.0 * t.d_lo),
        CaseTag::Case2 => tol.le(2.0 * t.d_lo, a_height) && tol.le(a_height, 2.0 * t.d_hi),
        CaseTag::Case3_1 => tol.le(b_height, 2.0 * t.d_hi) && tol.le(2.0 * t.d_hi, a_height),
        CaseTag::Case3_2 => tol.le(2.0 * t.d_hi, b_height),
        _ => unreachable!(),
    })
}

/// Picks the form used for `c`.
///
/// Order: the forms that are exact for every `λ` come first (`d_m = diam`,
/// then case 3.2, then `α_m⁺ = 0`), then cases 1, 2, 3.1. Forms agree
/// wherever their hypotheses overlap.
pub fn classify_case(c: &Characteristics, tol: Tolerance) -> Result<CaseTag> {
    const ORDER: [CaseTag; 6] = [
        CaseTag::DmEqualsDiam,
        CaseTag::Case3_2,
        CaseTag::AlphaZero,
        CaseTag::Case1,
        CaseTag::Case2,
        CaseTag::Case3_1,
    ];
    for case in ORDER {
        if case_applies(case, c, tol)? {
            return Ok(case);
        }
    }
    Err(Error::InvalidCharacteristics(
        "no case matches; characteristics are inconsistent".into(),
    ))
}

/// Evaluates the form of `case` at `λ`. Fails if the case's hypothesis does
/// not hold for `c`.
pub fn case_bound(case: CaseTag, c: &Characteristics, lambda: f64, tol: Tolerance) -> Result<GhBound> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::NonPositiveLambda(lambda));
    }
    if !case_applies(case, c, tol)? {
        return Err(Error::InvalidCharacteristics(format!(
            "case {case} does not apply to these characteristics"
        )));
    }
    let diam = c.diam;
    if case == CaseTag::DmEqualsDiam {
        return Ok(match c.alpha_plus.finite() {
            None => GhBound::exact(diam, case, Region::Left),
            Some(a) => {
                let region = if lambda <= diam + a { Region::Left } else { Region::Right };
                GhBound::exact(diam.max(lambda - a), case, region)
            }
        });
    }
    let t = terms(c)?;
    let exact = |v: f64, region| GhBound::exact(v, case, region);
    Ok(match case {
        CaseTag::AlphaZero => {
            let v = t.d_lo.max(lambda).max(diam - lambda);
            let region = if t.d_lo <= diam / 2.0 {
                if lambda <= diam / 2.0 { Region::Left } else { Region::Right }
            } else if lambda <= diam - t.d_lo {
                Region::Left
            } else if lambda <= t.d_lo {
                Region::Middle
            } else {
                Region::Right
            };
            exact(v, region)
        }
        CaseTag::Case3_2 => {
            let v = (diam - lambda).max(lambda - t.a_hi);
            let region = if lambda <= (diam + t.a_hi) / 2.0 { Region::Left } else { Region::Right };
            exact(v, region)
        }
        CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3_1 => {
            let right = t.a_hi + t.d_hi;
            let left = match case {
                CaseTag::Case1 => t.a_lo + t.d_lo,
                CaseTag::Case2 => (t.a_lo + diam) / 2.0,
                _ => diam - t.d_hi,
            };
            if lambda <= left {
                let v = match case {
                    CaseTag::Case1 => (diam - lambda).max(t.d_lo),
                    _ => diam - lambda,
                };
                exact(v, Region::Left)
            } else if lambda <= right {
                let lo = match case {
                    CaseTag::Case1 => (lambda - t.a_hi).max(t.d_lo),
                    _ => (diam - lambda).max(lambda - t.a_hi).max(t.d_lo),
                };
                let hi = match case {
                    CaseTag::Case3_1 => t.d_hi,
                    _ => (lambda - t.a_lo).min(t.d_hi),
                };
                GhBound::interval(lo, hi, case)
            } else {
                exact(lambda - t.a_hi, Region::Right)
            }
        }
        _ => unreachable!(),
    })
}

/// Exact value or interval for `2·d_GH(λΔ_m, X)` from characteristics.
pub fn bounds_from_characteristics(c: &Characteristics, lambda: f64, tol: Tolerance) -> Result<GhBound> {
    let case = classify_case(c, tol)?;
    case_bound(case, c, lambda, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Separation;

    const T: Tolerance = Tolerance::DEFAULT;

    fn chars(diam: f64, a_lo: f64, a_hi: f64, d_lo: f64, d_hi: f64) -> Characteristics {
        Characteristics {
            m: 2,
            diam,
            eps: None,
            alpha_minus: Separation::Finite(a_lo),
            alpha_plus: Separation::Finite(a_hi),
            d_minus: d_lo,
            d_plus: d_hi,
        }
    }

    fn e1_m2() -> Characteristics {
        Characteristics {
            eps: Some(1.0),
            ..chars(2.0, 1.0, 2.0, 1.0, 2.0)
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_case(&e1_m2(), T).unwrap(), CaseTag::Case1);
        assert_eq!(
            classify_case(&Characteristics::simplex(5, 2.0, 3).unwrap(), T).unwrap(),
            CaseTag::DmEqualsDiam
        );
        assert_eq!(classify_case(&chars(4.0, 0.0, 0.0, 1.0, 1.0), T).unwrap(), CaseTag::Case3_2);
        assert_eq!(classify_case(&Characteristics::circle_m2(), T).unwrap(), CaseTag::DmEqualsDiam);
        assert_eq!(classify_case(&chars(4.0, 0.0, 0.0, 1.0, 3.0), T).unwrap(), CaseTag::AlphaZero);
        // A inside the strip: diam - a_lo = 6 in [2*2, 2*4]
        assert_eq!(classify_case(&chars(8.0, 2.0, 3.0, 2.0, 4.0), T).unwrap(), CaseTag::Case2);
        // A above, B below the upper line: 10 - 3 = 7 <= 8 <= 10 - 0.5
        assert_eq!(classify_case(&chars(10.0, 0.5, 3.0, 1.0, 4.0), T).unwrap(), CaseTag::Case3_1);
    }

    #[test]
    fn circle_preset_is_max_of_two_and_lambda() {
        let c = Characteristics::circle_m2();
        let b = bounds_from_characteristics(&c, 3.0, T).unwrap();
        assert_eq!(b.value, BoundValue::Exact(3.0));
        for (lambda, v) in [(1.0, 2.0), (2.0, 2.0), (3.0, 3.0)] {
            assert_eq!(bounds_from_characteristics(&c, lambda, T).unwrap().value, BoundValue::Exact(v));
        }
    }

    #[test]
    fn e1_regions() {
        let c = e1_m2();
        let at = |l| bounds_from_characteristics(&c, l, T).unwrap();
        assert_eq!((at(0.5).value, at(0.5).region), (BoundValue::Exact(1.5), Region::Left));
        assert_eq!((at(1.0).value, at(1.0).region), (BoundValue::Exact(1.0), Region::Left));
        assert_eq!(
            (at(3.0).value, at(3.0).region),
            (BoundValue::Interval { lo: 1.0, hi: 2.0 }, Region::Middle)
        );
        assert_eq!((at(5.0).value, at(5.0).region), (BoundValue::Exact(3.0), Region::Right));
    }

    #[test]
    fn alpha_zero_kink() {
        let c = chars(6.0, 0.0, 0.0, 2.0, 5.0);
        let b = case_bound(CaseTag::AlphaZero, &c, 3.0, T).unwrap();
        assert_eq!(b.value, BoundValue::Exact(3.0));
        let wide = chars(6.0, 0.0, 0.0, 4.0, 5.0);
        assert_eq!(case_bound(CaseTag::AlphaZero, &wide, 3.0, T).unwrap().region, Region::Middle);
        assert_eq!(case_bound(CaseTag::AlphaZero, &wide, 3.0, T).unwrap().value, BoundValue::Exact(4.0));
    }

    #[test]
    fn single_block_characteristics() {
        let c = Characteristics::simplex(4, 1.5, 1).unwrap();
        assert_eq!(classify_case(&c, T).unwrap(), CaseTag::DmEqualsDiam);
        for lambda in [0.1, 1.0, 100.0] {
            assert_eq!(bounds_from_characteristics(&c, lambda, T).unwrap().value, BoundValue::Exact(1.5));
        }
        assert!(case_bound(CaseTag::Case1, &c, 1.0, T).is_err());
    }

    #[test]
    fn rejects_inapplicable_case_and_bad_lambda() {
        assert!(case_bound(CaseTag::Case3_2, &e1_m2(), 1.0, T).is_err());
        assert!(matches!(
            bounds_from_characteristics(&e1_m2(), 0.0, T),
            Err(Error::NonPositiveLambda(_))
        ));
        let mut bad = e1_m2();
        bad.d_plus = 0.5;
        assert!(matches!(classify_case(&bad, T), Err(Error::InvalidCharacteristics(_))));
    }
}
