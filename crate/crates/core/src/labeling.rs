//! Labelings `f: V -> {-1, 1, 2}` and the SRD / STRD admissibility test.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{header_fields, FamilyKind, PolytopeGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    MinusOne,
    One,
    Two,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::MinusOne, Label::One, Label::Two];

    pub fn value(self) -> i64 {
        match self {
            Label::MinusOne => -1,
            Label::One => 1,
            Label::Two => 2,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Label::MinusOne),
            1 => Some(Label::One),
            2 => Some(Label::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Closed (SRD) or open (STRD) neighbourhood sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "srd")]
    Srd,
    #[serde(rename = "strd")]
    Strd,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Srd, Variant::Strd];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Srd => "srd",
            Variant::Strd => "strd",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "srd" => Ok(Variant::Srd),
            "strd" => Ok(Variant::Strd),
            _ => Err(format!("unknown variant {s:?} (expected srd or strd)")),
        }
    }
}

/// A total labeling of one graph, stored in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelFunction {
    family: FamilyKind,
    n: usize,
    labels: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    SumTooLow { vertex: VertexId, sum: i64 },
    UncoveredMinusOne { vertex: VertexId },
}

impl Violation {
    pub fn vertex(&self) -> VertexId {
        match self {
            Violation::SumTooLow { vertex, .. } | Violation::UncoveredMinusOne { vertex } => *vertex,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SumTooLow { vertex, sum } => write!(f, "SumTooLow {vertex} sum={sum}"),
            Violation::UncoveredMinusOne { vertex } => {
                write!(f, "UncoveredMinusOne {vertex} no neighbor labeled 2")
            }
        }
    }
}

impl LabelFunction {
    pub fn new(g: &PolytopeGraph, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != g.vertex_count() {
            return Err(Error::Inconsistent(format!(
                "{} labels for {} vertices",
                labels.len(),
                g.vertex_count()
            )));
        }
        Ok(LabelFunction {
            family: g.family(),
            n: g.n(),
            labels,
        })
    }

    pub fn constant(g: &PolytopeGraph, label: Label) -> Self {
        LabelFunction {
            family: g.family(),
            n: g.n(),
            labels: vec![label; g.vertex_count()],
        }
    }

    /// Labels every vertex with `f(v)`.
    pub fn from_fn(g: &PolytopeGraph, mut f: impl FnMut(VertexId) -> Label) -> Self {
        LabelFunction {
            family: g.family(),
            n: g.n(),
            labels: g.vertices().map(&mut f).collect(),
        }
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> String {
        format!("{} n={}", self.family, self.n)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, g: &PolytopeGraph, v: VertexId) -> Result<Label> {
        Ok(self.labels[g.index_of(v)?])
    }

    pub fn set(&mut self, g: &PolytopeGraph, v: VertexId, label: Label) -> Result<()> {
        let i = g.index_of(v)?;
        self.labels[i] = label;
        Ok(())
    }

    pub fn weight(&self) -> i64 {
        self.labels.iter().map(|l| l.value()).sum()
    }

    fn check_identity(&self, g: &PolytopeGraph) -> Result<()> {
        if self.family != g.family() || self.n != g.n() || self.labels.len() != g.vertex_count() {
            return Err(Error::IdentityMismatch {
                expected: g.identity(),
                found: self.identity(),
            });
        }
        Ok(())
    }

    /// Text form: header then `<name> <label>` per vertex, canonical order.
    pub fn to_text(&self, g: &PolytopeGraph, variant: Variant, source: Option<&str>) -> String {
        let mut out = format!("# family={} n={} variant={}", self.family, self.n, variant);
        if let Some(src) = source {
            out.push_str(&format!(" source={src}"));
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("{} {}\n", g.vertex(i), l));
        }
        out
    }

    /// Parses the text form against `g`. Rejects duplicates, omissions,
    /// unknown vertices and labels outside {-1, 1, 2}.
    pub fn parse_text(g: &PolytopeGraph, text: &str) -> Result<(Self, Option<Variant>)> {
        let mut variant = None;
        let mut header_seen = false;
        let mut slots: Vec<Option<Label>> = vec![None; g.vertex_count()];
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('#') {
                if header_seen {
                    continue;
                }
                header_seen = true;
                for (k, v) in header_fields(line, lineno)? {
                    let bad = |msg: String| Error::Parse { line: lineno, msg };
                    match k.as_str() {
                        "family" => {
                            let fam: FamilyKind = v.parse().map_err(bad)?;
                            if fam != g.family() {
                                return Err(Error::IdentityMismatch {
                                    expected: g.identity(),
                                    found: format!("{fam}"),
                                });
                            }
                        }
                        "n" => {
                            let n: usize = v.parse().map_err(|_| bad(format!("bad n {v:?}")))?;
                            if n != g.n() {
                                return Err(Error::IdentityMismatch {
                                    expected: g.identity(),
                                    found: format!("n={n}"),
                                });
                            }
                        }
                        "variant" => variant = Some(v.parse().map_err(bad)?),
                        _ => {}
                    }
                }
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `<name> <label>`, got {line:?}"),
                });
            }
            let v: VertexId = parts[0]
                .parse()
                .map_err(|msg| Error::Parse { line: lineno, msg })?;
            let idx = g.index_of(v)?;
            let label = parts[1]
                .parse::<i64>()
                .ok()
                .and_then(Label::from_value)
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("label must be -1, 1 or 2, got {:?}", parts[1]),
                })?;
            if slots[idx].replace(label).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("duplicate vertex {v}"),
                });
            }
        }
        let labels = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or(Error::MissingLabel(g.vertex(i))))
            .collect::<Result<Vec<_>>>()?;
        Ok((LabelFunction::new(g, labels)?, variant))
    }
}

/// Sum of labels over `N[v]` (SRD) or `N(v)` (STRD).
pub fn neighborhood_sum(g: &PolytopeGraph, f: &LabelFunction, v: VertexId, variant: Variant) -> Result<i64> {
    f.check_identity(g)?;
    let i = g.index_of(v)?;
    Ok(sum_at(g, &f.labels, i, variant))
}

fn sum_at(g: &PolytopeGraph, labels: &[Label], i: usize, variant: Variant) -> i64 {
    let own = match variant {
        Variant::Srd => labels[i].value(),
        Variant::Strd => 0,
    };
    own + g.neighbors(i).iter().map(|&j| labels[j].value()).sum::<i64>()
}

fn witnessed(g: &PolytopeGraph, labels: &[Label], i: usize) -> bool {
    labels[i] != Label::MinusOne || g.neighbors(i).iter().any(|&j| labels[j] == Label::Two)
}

/// Every violation, ordered by vertex then kind.
pub fn validate(g: &PolytopeGraph, f: &LabelFunction, variant: Variant) -> Result<Vec<Violation>> {
    f.check_identity(g)?;
    let mut out = Vec::new();
    for i in 0..g.vertex_count() {
        let s = sum_at(g, &f.labels, i, variant);
        if s < 1 {
            out.push(Violation::SumTooLow {
                vertex: g.vertex(i),
                sum: s,
            });
        }
        if !witnessed(g, &f.labels, i) {
            out.push(Violation::UncoveredMinusOne { vertex: g.vertex(i) });
        }
    }
    Ok(out)
}

/// Short-circuiting form of `validate(..).is_empty()`.
pub fn is_admissible(g: &PolytopeGraph, f: &LabelFunction, variant: Variant) -> Result<bool> {
    f.check_identity(g)?;
    Ok((0..g.vertex_count()).all(|i| sum_at(g, &f.labels, i, variant) >= 1 && witnessed(g, &f.labels, i)))
}

/// Validation in an arbitrary vertex order; the result is sorted so it can
/// be compared with [`validate`].
pub fn validate_in_order(
    g: &PolytopeGraph,
    f: &LabelFunction,
    variant: Variant,
    order: &[usize],
) -> Result<Vec<Violation>> {
    f.check_identity(g)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &i in order {
        if i >= g.vertex_count() || !seen.insert(i) {
            return Err(Error::Inconsistent(format!("order is not a permutation at {i}")));
        }
        let s = sum_at(g, &f.labels, i, variant);
        if s < 1 {
            out.push(Violation::SumTooLow {
                vertex: g.vertex(i),
                sum: s,
            });
        }
        if !witnessed(g, &f.labels, i) {
            out.push(Violation::UncoveredMinusOne { vertex: g.vertex(i) });
        }
    }
    if seen.len() != g.vertex_count() {
        return Err(Error::Inconsistent("order is not a permutation".into()));
    }
    out.sort_by_key(|v| (v.vertex(), matches!(v, Violation::UncoveredMinusOne { .. })));
    Ok(out)
}
