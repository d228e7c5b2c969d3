//! General degree bounds, per-family theorem intervals, and a checker for
//! multiplier combinations of aggregated class inequalities.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::h;
use crate::error::{Error, Result};
use crate::family::{FamilyKind, PolytopeGraph, VertexClass};
use crate::labeling::{Label, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub delta: i64,
    pub big_delta: i64,
    pub n_vertices: i64,
}

impl DegreeProfile {
    pub fn new(delta: i64, big_delta: i64, n_vertices: i64) -> Result<Self> {
        if !(1 <= delta && delta <= big_delta && big_delta < n_vertices) {
            return Err(Error::Inconsistent(format!(
                "profile needs 1 <= delta <= Delta < n, got ({delta}, {big_delta}, {n_vertices})"
            )));
        }
        Ok(DegreeProfile {
            delta,
            big_delta,
            n_vertices,
        })
    }

    pub fn of(g: &PolytopeGraph) -> Result<Self> {
        let degs = (0..g.vertex_count()).map(|i| g.neighbors(i).len() as i64);
        let delta = degs.clone().min().unwrap_or(0);
        let big_delta = degs.max().unwrap_or(0);
        Self::new(delta, big_delta, g.vertex_count() as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    LowerSrd,
    LowerStrd,
    UpperStrd,
    TheoremLower,
    TheoremUpper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub kind: BoundKind,
    /// Value as the formula states it (ceiling included where the formula has one).
    pub value: Option<Rational64>,
    pub applicable: bool,
    pub reason: String,
}

impl BoundValue {
    fn applies(kind: BoundKind, value: Rational64, reason: impl Into<String>) -> Self {
        BoundValue {
            kind,
            value: Some(value),
            applicable: true,
            reason: reason.into(),
        }
    }

    fn not_applicable(kind: BoundKind, reason: impl Into<String>) -> Self {
        BoundValue {
            kind,
            value: None,
            applicable: false,
            reason: reason.into(),
        }
    }

    /// Smallest integer allowed by a lower bound (gamma is an integer).
    pub fn sharpened(&self) -> Option<i64> {
        self.value.map(|v| v.ceil().to_integer())
    }
}

/// `(-2D^2 + 2Dd + D + 2d + 3) n / ((D + 1)(2D + d + 3))`, unrounded.
pub fn lb_general_srd(p: &DegreeProfile) -> BoundValue {
    let (d, dd, n) = (p.delta, p.big_delta, p.n_vertices);
    let num = -2 * dd * dd + 2 * dd * d + dd + 2 * d + 3;
    let den = (dd + 1) * (2 * dd + d + 3);
    BoundValue::applies(BoundKind::LowerSrd, Rational64::new(num * n, den), "general graphs")
}

/// `ceil((2d + 3 - 2D) n / (2D + d))`, only when `d < D`.
pub fn lb_general_strd(p: &DegreeProfile) -> BoundValue {
    let (d, dd, n) = (p.delta, p.big_delta, p.n_vertices);
    if d >= dd {
        return BoundValue::not_applicable(BoundKind::LowerStrd, "requires delta < Delta");
    }
    let v = Rational64::new((2 * d + 3 - 2 * dd) * n, 2 * dd + d).ceil();
    BoundValue::applies(BoundKind::LowerStrd, v, "delta < Delta")
}

/// `n - 1`, only when `d >= 3`.
pub fn ub_general_strd(p: &DegreeProfile) -> BoundValue {
    if p.delta < 3 {
        return BoundValue::not_applicable(BoundKind::UpperStrd, "requires delta >= 3");
    }
    BoundValue::applies(
        BoundKind::UpperStrd,
        Rational64::from_integer(p.n_vertices - 1),
        "delta >= 3",
    )
}

/// The general bounds that apply to `variant`.
pub fn general_bounds(p: &DegreeProfile, variant: Variant) -> Vec<BoundValue> {
    match variant {
        Variant::Srd => vec![lb_general_srd(p)],
        Variant::Strd => vec![lb_general_strd(p), ub_general_strd(p)],
    }
}

/// Per-column constant quoted for a general bound on a family, as
/// (kind, coefficient of n, whether a ceiling wraps it).
pub fn quoted_general_constant(family: FamilyKind, variant: Variant) -> Vec<(BoundKind, Rational64, bool)> {
    use BoundKind::*;
    use FamilyKind::*;
    let r = Rational64::new;
    match (family, variant) {
        (An, Variant::Srd) => vec![(LowerSrd, r(-3, 19), false)],
        (Rn, Variant::Srd) => vec![(LowerSrd, r(-3, 16), false)],
        (Sn, Variant::Strd) => vec![(LowerStrd, r(-4, 13), true), (UpperStrd, r(4, 1), false)],
        (Tn, Variant::Strd) => vec![(LowerStrd, r(2, 7), true), (UpperStrd, r(4, 1), false)],
        (Tn, Variant::Srd) => vec![(LowerSrd, r(4, 17), false)],
        (Qn, Variant::Srd) => vec![(LowerSrd, r(-1, 4), false)],
        (TnDoublePrime, Variant::Srd) => vec![(LowerSrd, r(-2, 3), false)],
        _ => vec![],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBounds {
    pub theorem: u8,
    /// Lower bound exactly as proven, before integrality.
    pub lower_literal: Rational64,
    /// `ceil(lower_literal)`.
    pub lower: i64,
    pub upper: i64,
    pub exact: bool,
}

pub fn theorem_bounds(family: FamilyKind, variant: Variant, n: usize) -> Result<TheoremBounds> {
    let ni = n as i64;
    let frac = |p: i64, q: i64| Rational64::new(p * ni, q);
    let out_of_range = |min: usize, what: &str| {
        Error::NotApplicable(format!("{family} {variant}: theorem needs {what} >= {min}, got n={n}"))
    };
    let (theorem, lower_literal, upper) = match (family, variant) {
        (FamilyKind::An, Variant::Srd) => {
            if n < 5 {
                return Err(out_of_range(5, "n"));
            }
            (1, Rational64::zero(), 0)
        }
        (FamilyKind::Rn, Variant::Srd) => {
            if n < 5 {
                return Err(out_of_range(5, "n"));
            }
            let k = ni / 3;
            let upper = if n % 3 == 0 { 2 * k } else { 2 * k + 2 };
            (2, frac(2, 3), upper)
        }
        (FamilyKind::Sn, Variant::Strd) => {
            if n < 5 {
                return Err(out_of_range(5, "n"));
            }
            (3, frac(1, 1), ni)
        }
        (FamilyKind::Tn, Variant::Strd) => {
            if n % 2 == 0 && n < 6 {
                return Err(out_of_range(6, "even n"));
            }
            if n < 5 {
                return Err(out_of_range(5, "odd n"));
            }
            (4, frac(1, 1), if n % 2 == 0 { ni } else { ni + 1 })
        }
        (FamilyKind::Tn, Variant::Srd) => {
            if n < 5 {
                return Err(out_of_range(5, "n"));
            }
            (5, frac(3, 4), ni)
        }
        (FamilyKind::Qn, Variant::Srd) => {
            if n < 12 {
                return Err(out_of_range(12, "n"));
            }
            (6, frac(2, 3), ni)
        }
        (FamilyKind::TnDoublePrime, Variant::Srd) => {
            if n < 5 {
                return Err(out_of_range(5, "n"));
            }
            (7, frac(7, 15), h(n))
        }
        _ => {
            return Err(Error::NotApplicable(format!(
                "no theorem covers {family} {variant}"
            )))
        }
    };
    let lower = lower_literal.ceil().to_integer();
    Ok(TheoremBounds {
        theorem,
        lower_literal,
        lower,
        upper,
        exact: lower == upper,
    })
}

/// One inequality available to a multiplier combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    /// Per-vertex sum condition summed over one class (`>= n`).
    Aggregated(VertexClass),
    /// `X_{-1} + X_1 + X_2 = n`.
    ClassCount(VertexClass),
    /// `sum f(x) over class X <= 2n`.
    WeightCap(VertexClass),
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Row::Aggregated(c) => write!(f, "sum_{}", c.letter()),
            Row::ClassCount(c) => write!(f, "count_{}", c.letter()),
            Row::WeightCap(c) => write!(f, "cap_{}", c.letter()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    /// Lower bound on weight per column: `gamma >= coefficient * n`.
    pub coefficient: Rational64,
    /// Right-hand side of the combined inequality, per column.
    pub constant: Rational64,
    /// `s` with `combined lhs <= s * weight`.
    pub scalar: Rational64,
    /// Combined left side equals `s * weight` exactly.
    pub exact: bool,
}

const LABELS: [Label; 3] = [Label::MinusOne, Label::One, Label::Two];

/// Combines class inequalities with rational multipliers and derives the
/// implied lower bound on total weight.
///
/// Work is done in count variables `X_l` (number of class-X vertices with
/// label l). The combination yields `sum c[X_l] X_l >= constant * n`; if some
/// `s > 0` has `c[X_l] <= s * l` for every X and l, then
/// `weight >= constant / s * n`.
pub fn verify_multiplier_combination(
    coefficients: &[Vec<i64>],
    multipliers: &[(Row, Rational64)],
) -> Result<Combination> {
    let rows = coefficients.len();
    let mut c = vec![Rational64::zero(); rows * 3];
    let mut constant = Rational64::zero();
    for &(row, m) in multipliers {
        match row {
            Row::Aggregated(x) => {
                if m.is_negative() {
                    return Err(Error::Inconsistent(format!("{row} needs a nonnegative multiplier")));
                }
                let coef = coefficients.get(x.row()).ok_or_else(|| Error::UnknownVertex(format!("class {}", x.letter())))?;
                for (y, &k) in coef.iter().enumerate() {
                    for (li, l) in LABELS.iter().enumerate() {
                        c[y * 3 + li] += m * Rational64::from_integer(k * l.value());
                    }
                }
                constant += m;
            }
            Row::ClassCount(x) => {
                if x.row() >= rows {
                    return Err(Error::UnknownVertex(format!("class {}", x.letter())));
                }
                for li in 0..3 {
                    c[x.row() * 3 + li] += m;
                }
                constant += m;
            }
            Row::WeightCap(x) => {
                if m.is_negative() {
                    return Err(Error::Inconsistent(format!("{row} needs a nonnegative multiplier")));
                }
                if x.row() >= rows {
                    return Err(Error::UnknownVertex(format!("class {}", x.letter())));
                }
                for (li, l) in LABELS.iter().enumerate() {
                    c[x.row() * 3 + li] -= m * Rational64::from_integer(l.value());
                }
                constant -= m * Rational64::from_integer(2);
            }
        }
    }

    let mut s_lo: Option<Rational64> = None;
    let mut s_hi: Option<Rational64> = None;
    for x in 0..rows {
        let hi = -c[x * 3];
        s_hi = Some(s_hi.map_or(hi, |s| s.min(hi)));
        for (li, l) in LABELS.iter().enumerate().skip(1) {
            let lo = c[x * 3 + li] / Rational64::from_integer(l.value());
            s_lo = Some(s_lo.map_or(lo, |s| s.max(lo)));
        }
    }
    let (s_lo, s_hi) = (s_lo.unwrap_or_else(Rational64::one), s_hi.unwrap_or_else(Rational64::one));
    let residual = |s: Rational64| -> Vec<String> {
        (0..rows)
            .flat_map(|x| {
                let c = &c;
                LABELS.iter().enumerate().map(move |(li, l)| {
                    let r = c[x * 3 + li] - s * Rational64::from_integer(l.value());
                    format!(
                        "{}{}:{}",
                        VertexClass::from_row(x).map_or('?', |v| v.letter()),
                        l.value(),
                        r
                    )
                })
            })
            .collect()
    };
    if s_lo > s_hi || !s_hi.is_positive() {
        return Err(Error::NoTelescope {
            residual: residual(s_lo.max(Rational64::one())),
        });
    }
    let scalar = if constant.is_negative() {
        s_hi
    } else if s_lo.is_positive() {
        s_lo
    } else if constant.is_zero() {
        s_hi
    } else {
        return Err(Error::NoTelescope {
            residual: residual(s_hi),
        });
    };
    let exact = (0..rows).all(|x| {
        LABELS
            .iter()
            .enumerate()
            .all(|(li, l)| c[x * 3 + li] == scalar * Rational64::from_integer(l.value()))
    });
    Ok(Combination {
        coefficient: constant / scalar,
        constant,
        scalar,
        exact,
    })
}

/// The multiplier vector used in each lower-bound proof.
pub fn proof_multipliers(family: FamilyKind, variant: Variant) -> Option<Vec<(Row, Rational64)>> {
    use Row::*;
    use VertexClass::*;
    let r = Rational64::new;
    Some(match (family, variant) {
        (FamilyKind::An, Variant::Srd) => vec![
            (Aggregated(A), r(1, 3)),
            (Aggregated(C), r(1, 3)),
            (WeightCap(B), r(1, 3)),
        ],
        (FamilyKind::Rn, Variant::Srd) => vec![(Aggregated(A), r(1, 3)), (Aggregated(C), r(1, 3))],
        (FamilyKind::Sn, Variant::Strd) => vec![(Aggregated(B), r(1, 2)), (Aggregated(D), r(1, 2))],
        (FamilyKind::Tn, Variant::Strd) => vec![(Aggregated(A), r(1, 2)), (Aggregated(D), r(1, 2))],
        (FamilyKind::Tn, Variant::Srd) => vec![
            (Aggregated(A), r(1, 4)),
            (Aggregated(B), r(1, 8)),
            (Aggregated(C), r(1, 8)),
            (Aggregated(D), r(1, 4)),
        ],
        (FamilyKind::Qn, Variant::Srd) => vec![
            (ClassCount(C), r(-1, 6)),
            (Aggregated(A), r(1, 4)),
            (Aggregated(B), r(1, 4)),
            (Aggregated(D), r(1, 3)),
        ],
        (FamilyKind::TnDoublePrime, Variant::Srd) => vec![
            (ClassCount(C), r(-4, 15)),
            (Aggregated(A), r(1, 5)),
            (Aggregated(B), r(1, 5)),
            (Aggregated(D), r(1, 3)),
        ],
        _ => return None,
    })
}
