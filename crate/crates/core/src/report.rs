//! Per-instance records comparing exact values with the known bounds.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{general_bounds, quoted_general_constant, theorem_bounds, DegreeProfile};
use crate::certificate::certificate;
use crate::error::{Error, Result};
use crate::family::{generate, FamilyKind};
use crate::labeling::{is_admissible, Variant};
use crate::solver::solve_profile_dp;

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    /// The theorem gives an exact value and gamma equals it.
    ConfirmsTheorem,
    /// The theorem gives an interval and gamma lies inside it.
    TightensInterval,
    Inconclusive,
    /// gamma lies outside the proven interval.
    CONTRADICTION,
    /// No theorem covers this (family, variant, n).
    Uncovered,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRecord {
    pub family: FamilyKind,
    pub n: usize,
    pub variant: Variant,
    /// `None` when no exact value is available.
    pub gamma: Option<i64>,
    pub certificate_weight: Option<i64>,
    pub theorem_lower: Option<i64>,
    pub theorem_upper: Option<i64>,
    pub general_bounds: Value,
    pub status: Status,
}

impl ReportRecord {
    /// Builds the record for one instance from an already computed gamma.
    pub fn new(family: FamilyKind, variant: Variant, n: usize, gamma: Option<i64>) -> Result<Self> {
        let g = generate(family, n)?;
        let certificate_weight = match certificate(family, variant, n) {
            Ok(c) if is_admissible(&g, &c.labeling, variant)? => Some(c.labeling.weight()),
            Ok(_) => None,
            Err(Error::NotApplicable(_)) | Err(Error::BelowMinimum { .. }) => None,
            Err(e) => return Err(e),
        };
        let theorem = match theorem_bounds(family, variant, n) {
            Ok(t) => Some(t),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        let status = match (gamma, &theorem) {
            (None, _) => Status::Inconclusive,
            (Some(_), None) => Status::Uncovered,
            (Some(v), Some(t)) if v < t.lower || v > t.upper => Status::CONTRADICTION,
            (Some(_), Some(t)) if t.exact => Status::ConfirmsTheorem,
            (Some(_), Some(_)) => Status::TightensInterval,
        };

        let profile = DegreeProfile::of(&g)?;
        let quoted = quoted_general_constant(family, variant);
        let bounds: Vec<Value> = general_bounds(&profile, variant)
            .into_iter()
            .map(|b| {
                let annotation = quoted
                    .iter()
                    .find(|(k, _, _)| *k == b.kind)
                    .map(|(_, c, ceil)| {
                        if *ceil {
                            format!("ceil({c} n)")
                        } else {
                            format!("{c} n")
                        }
                    });
                json!({
                    "kind": format!("{:?}", b.kind),
                    "value": b.value.map(|v| v.to_string()),
                    "integer": b.sharpened(),
                    "applicable": b.applicable,
                    "reason": b.reason,
                    "quoted": annotation,
                })
            })
            .collect();

        Ok(ReportRecord {
            family,
            n,
            variant,
            gamma,
            certificate_weight,
            theorem_lower: theorem.as_ref().map(|t| t.lower),
            theorem_upper: theorem.as_ref().map(|t| t.upper),
            general_bounds: Value::Array(bounds),
            status,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.tag(),
            "n": self.n,
            "variant": self.variant.tag(),
            "gamma": match self.gamma {
                Some(v) => json!(v),
                None => json!("inconclusive"),
            },
            "certificate_weight": self.certificate_weight,
            "theorem_lower": self.theorem_lower,
            "theorem_upper": self.theorem_upper,
            "general_bounds": self.general_bounds,
            "status": self.status,
        })
    }
}

/// Solves every n in `lo..=hi` with the profile DP. Records come back
/// sorted by n; an empty range yields no records.
pub fn table(family: FamilyKind, variant: Variant, lo: usize, hi: usize) -> Result<Vec<ReportRecord>> {
    (lo..=hi)
        .map(|n| {
            let g = generate(family, n)?;
            let r = solve_profile_dp(&g, variant)?;
            ReportRecord::new(family, variant, n, Some(r.gamma))
        })
        .collect()
}

/// Pretty JSON array, keys sorted, LF line endings, trailing newline.
pub fn records_json(records: &[ReportRecord]) -> String {
    let arr = Value::Array(records.iter().map(ReportRecord::to_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("json values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_exact_and_sorted() {
        let r = ReportRecord::new(FamilyKind::Sn, Variant::Strd, 6, Some(6)).unwrap();
        let v = r.to_json();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "certificate_weight",
                "family",
                "gamma",
                "general_bounds",
                "n",
                "status",
                "theorem_lower",
                "theorem_upper",
                "variant"
            ]
        );
        assert_eq!(r.status, Status::ConfirmsTheorem);
    }

    #[test]
    fn status_follows_interval() {
        let at = |g| ReportRecord::new(FamilyKind::Tn, Variant::Srd, 8, g).unwrap().status;
        assert_eq!(at(Some(7)), Status::TightensInterval);
        assert_eq!(at(Some(5)), Status::CONTRADICTION);
        assert_eq!(at(Some(9)), Status::CONTRADICTION);
        assert_eq!(at(None), Status::Inconclusive);
        let un = ReportRecord::new(FamilyKind::An, Variant::Strd, 6, Some(4)).unwrap();
        assert_eq!(un.status, Status::Uncovered);
        assert_eq!(un.certificate_weight, None);
    }

    #[test]
    fn empty_range_is_empty_array() {
        let recs = table(FamilyKind::Sn, Variant::Strd, 6, 5).unwrap();
        assert_eq!(records_json(&recs), "[]\n");
    }
}
