//! Explicit upper-bound labelings, one constructor per theorem.
//!
//! Each constructor builds the labeling from its pattern and records the
//! weight the closed-form case formula predicts. The two are computed
//! independently so tests can compare them.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{generate, FamilyKind, PolytopeGraph, VertexClass, VertexId};
use crate::labeling::{Label, LabelFunction, Variant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub theorem: u8,
    pub case: &'static str,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Thm{}/{}", self.theorem, self.case)
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub graph: PolytopeGraph,
    pub variant: Variant,
    pub labeling: LabelFunction,
    pub claimed_weight: i64,
    pub source: Source,
}

/// (family, variant) pairs that have a certificate constructor.
pub const COVERED: [(FamilyKind, Variant); 7] = [
    (FamilyKind::An, Variant::Srd),
    (FamilyKind::Rn, Variant::Srd),
    (FamilyKind::Sn, Variant::Strd),
    (FamilyKind::Tn, Variant::Strd),
    (FamilyKind::Tn, Variant::Srd),
    (FamilyKind::Qn, Variant::Srd),
    (FamilyKind::TnDoublePrime, Variant::Srd),
];

/// Smallest n each certificate constructor accepts.
pub fn min_n(family: FamilyKind, variant: Variant) -> Option<usize> {
    match (family, variant) {
        (FamilyKind::Qn, Variant::Srd) => Some(12),
        (f, v) if COVERED.contains(&(f, v)) => Some(5),
        _ => None,
    }
}

pub fn certificate(family: FamilyKind, variant: Variant, n: usize) -> Result<Certificate> {
    match (family, variant) {
        (FamilyKind::An, Variant::Srd) => cert_an_srd(n),
        (FamilyKind::Rn, Variant::Srd) => cert_rn_srd(n),
        (FamilyKind::Sn, Variant::Strd) => cert_sn_strd(n),
        (FamilyKind::Tn, Variant::Strd) => cert_tn_strd(n),
        (FamilyKind::Tn, Variant::Srd) => cert_tn_srd(n),
        (FamilyKind::Qn, Variant::Srd) => cert_qn_srd(n),
        (FamilyKind::TnDoublePrime, Variant::Srd) => cert_tn2p_srd(n),
        _ => Err(Error::NotApplicable(format!(
            "no certificate for {family} {variant}; covered: {}",
            COVERED
                .iter()
                .map(|(f, v)| format!("{f}/{v}"))
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// Labeling builder: everything starts at -1, listed vertices are raised.
/// Assigning the same vertex twice is a construction bug.
struct Builder<'a> {
    g: &'a PolytopeGraph,
    labels: Vec<Option<Label>>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a PolytopeGraph) -> Self {
        Builder {
            g,
            labels: vec![None; g.vertex_count()],
        }
    }

    fn put(&mut self, class: VertexClass, index: i64, label: Label) -> Result<()> {
        let v = VertexId::wrapped(class, index, self.g.n());
        let i = self.g.index_of(v)?;
        if self.labels[i].replace(label).is_some() {
            return Err(Error::Inconsistent(format!("{v} labeled twice")));
        }
        Ok(())
    }

    fn row(&mut self, class: VertexClass, label: Label) -> Result<()> {
        for i in 0..self.g.n() as i64 {
            self.put(class, i, label)?;
        }
        Ok(())
    }

    fn finish(self) -> LabelFunction {
        let labels = self
            .labels
            .into_iter()
            .map(|l| l.unwrap_or(Label::MinusOne))
            .collect();
        LabelFunction::new(self.g, labels).expect("length matches graph")
    }
}

fn checked_graph(family: FamilyKind, n: usize, min: usize) -> Result<PolytopeGraph> {
    if n < min {
        return Err(Error::BelowMinimum { family, n, min });
    }
    generate(family, n)
}

use Label::{One, Two};
use VertexClass::{A, B, C, D};

/// b -> 2, a and c -> -1.
pub fn cert_an_srd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::An, n, 5)?;
    let mut b = Builder::new(&g);
    b.row(B, Two)?;
    let labeling = b.finish();
    Ok(Certificate {
        labeling,
        claimed_weight: 0,
        source: Source { theorem: 1, case: "all" },
        variant: Variant::Srd,
        graph: g,
    })
}

/// b -> 2, c_{3i} -> 1 for 3i < n, the rest -1.
pub fn cert_rn_srd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::Rn, n, 5)?;
    let mut b = Builder::new(&g);
    b.row(B, Two)?;
    for i in (0..n as i64).step_by(3) {
        b.put(C, i, One)?;
    }
    let labeling = b.finish();
    let k = (n / 3) as i64;
    let (claimed_weight, case) = match n % 3 {
        0 => (2 * k, "n=3k"),
        1 => (2 * k + 2, "n=3k+1"),
        _ => (2 * k + 2, "n=3k+2"),
    };
    Ok(Certificate {
        labeling,
        claimed_weight,
        source: Source { theorem: 2, case },
        variant: Variant::Srd,
        graph: g,
    })
}

/// b -> 2, d -> 1, a and c -> -1.
pub fn cert_sn_strd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::Sn, n, 5)?;
    let mut b = Builder::new(&g);
    b.row(B, Two)?;
    b.row(D, One)?;
    let labeling = b.finish();
    Ok(Certificate {
        labeling,
        claimed_weight: n as i64,
        source: Source { theorem: 3, case: "all" },
        variant: Variant::Strd,
        graph: g,
    })
}

fn tn_even_block(b: &mut Builder<'_>, columns: usize) -> Result<()> {
    for i in 0..columns as i64 {
        if i % 2 == 0 {
            b.put(B, i, Two)?;
            b.put(C, i, One)?;
        } else {
            b.put(B, i, One)?;
            b.put(C, i, Two)?;
        }
    }
    Ok(())
}

/// Even n: b and c alternate (2,1)/(1,2) by column parity; a, d -> -1.
/// Odd n = 2k+1: the same on columns 0..2k-1, then b_{2k} -> 2 and
/// c_{2k} -> 2, which is the labeling whose weight is 2k+2.
pub fn cert_tn_strd(n: usize) -> Result<Certificate> {
    let min = if n % 2 == 0 { 6 } else { 5 };
    let g = checked_graph(FamilyKind::Tn, n, min)?;
    let mut b = Builder::new(&g);
    let (claimed_weight, case) = if n % 2 == 0 {
        tn_even_block(&mut b, n)?;
        (n as i64, "n=2k")
    } else {
        tn_even_block(&mut b, n - 1)?;
        b.put(B, n as i64 - 1, Two)?;
        b.put(C, n as i64 - 1, Two)?;
        (n as i64 + 1, "n=2k+1")
    };
    let labeling = b.finish();
    Ok(Certificate {
        labeling,
        claimed_weight,
        source: Source { theorem: 4, case },
        variant: Variant::Strd,
        graph: g,
    })
}

/// The odd-n labeling with b_{2k} -> 1 exactly as worded in the case
/// description. It has weight 2k+1 and fails at a_{2k}: open sum 0 and no
/// neighbour labeled 2. Kept for diagnostics.
pub fn t_n_strd_odd_literal(n: usize) -> Result<LabelFunction> {
    if n % 2 == 0 {
        return Err(Error::NotApplicable("odd n only".into()));
    }
    let g = checked_graph(FamilyKind::Tn, n, 5)?;
    let mut b = Builder::new(&g);
    tn_even_block(&mut b, n - 1)?;
    b.put(B, n as i64 - 1, One)?;
    b.put(C, n as i64 - 1, Two)?;
    Ok(b.finish())
}

/// a -> 1, c -> 2, b and d -> -1.
pub fn cert_tn_srd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::Tn, n, 5)?;
    let mut b = Builder::new(&g);
    b.row(A, One)?;
    b.row(C, Two)?;
    let labeling = b.finish();
    Ok(Certificate {
        labeling,
        claimed_weight: n as i64,
        source: Source { theorem: 5, case: "all" },
        variant: Variant::Srd,
        graph: g,
    })
}

// Periodic part of the Q_n labeling for blocks i in 0..blocks.
fn qn_blocks(b: &mut Builder<'_>, blocks: i64) -> Result<()> {
    for i in 0..blocks {
        let j = 3 * i;
        b.put(A, j, Two)?;
        b.put(B, j + 1, Two)?;
        b.put(D, j + 2, Two)?;
        b.put(B, j, One)?;
        b.put(B, j + 2, One)?;
        b.put(D, j, One)?;
    }
    Ok(())
}

/// Positive labels per residue of n mod 3 (all other vertices -1).
pub fn cert_qn_srd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::Qn, n, 12)?;
    let mut b = Builder::new(&g);
    let k = (n / 3) as i64;
    let case = match n % 3 {
        0 => {
            qn_blocks(&mut b, k)?;
            "n=3k"
        }
        1 => {
            qn_blocks(&mut b, k - 1)?;
            for (c, i) in [(A, 3 * k - 3), (B, 3 * k - 1), (D, 3 * k - 3), (D, 3 * k)] {
                b.put(c, i, Two)?;
            }
            for (c, i) in [(A, 3 * k - 1), (B, 3 * k - 3), (C, 3 * k - 2), (C, 3 * k - 1)] {
                b.put(c, i, One)?;
            }
            "n=3k+1"
        }
        _ => {
            qn_blocks(&mut b, k - 3)?;
            let twos = [
                (A, 3 * k - 9),
                (A, 3 * k - 5),
                (A, 3 * k - 2),
                (B, 3 * k - 7),
                (B, 3 * k - 4),
                (B, 3 * k),
                (D, 3 * k - 9),
                (D, 3 * k - 6),
                (D, 3 * k - 3),
                (D, 3 * k - 2),
                (D, 3 * k + 1),
            ];
            let ones = [
                (A, 3 * k - 7),
                (A, 3 * k),
                (B, 3 * k - 9),
                (B, 3 * k - 5),
                (B, 3 * k - 3),
                (B, 3 * k - 2),
                (C, 3 * k - 8),
                (C, 3 * k - 7),
                (C, 3 * k - 1),
                (C, 3 * k),
                (D, 3 * k - 5),
            ];
            for (c, i) in twos {
                b.put(c, i, Two)?;
            }
            for (c, i) in ones {
                b.put(c, i, One)?;
            }
            "n=3k+2"
        }
    };
    let labeling = b.finish();
    Ok(Certificate {
        labeling,
        claimed_weight: n as i64,
        source: Source { theorem: 6, case },
        variant: Variant::Srd,
        graph: g,
    })
}

/// h(n) = ceil(2n/3), plus one unless 3 | n.
pub fn h(n: usize) -> i64 {
    let base = (2 * n as i64 + 2) / 3;
    if n % 3 == 0 {
        base
    } else {
        base + 1
    }
}

/// b -> 2; d follows the period (2, 1, -1) from d_0, truncated at n;
/// a and c -> -1.
pub fn cert_tn2p_srd(n: usize) -> Result<Certificate> {
    let g = checked_graph(FamilyKind::TnDoublePrime, n, 5)?;
    let mut b = Builder::new(&g);
    b.row(B, Two)?;
    for i in 0..n as i64 {
        match i % 3 {
            0 => b.put(D, i, Two)?,
            1 => b.put(D, i, One)?,
            _ => {}
        }
    }
    let labeling = b.finish();
    let case = match n % 3 {
        0 => "n=3k",
        1 => "n=3k+1",
        _ => "n=3k+2",
    };
    Ok(Certificate {
        labeling,
        claimed_weight: h(n),
        source: Source { theorem: 7, case },
        variant: Variant::Srd,
        graph: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{neighborhood_sum, validate, Violation};

    fn s(c: &Certificate, class: VertexClass, i: i64) -> i64 {
        let v = VertexId::wrapped(class, i, c.graph.n());
        neighborhood_sum(&c.graph, &c.labeling, v, c.variant).unwrap()
    }

    #[test]
    fn a_n_sums() {
        let c = cert_an_srd(6).unwrap();
        for i in 0..6 {
            assert_eq!(s(&c, B, i), 2);
            assert_eq!(s(&c, A, i), 1);
            assert_eq!(s(&c, C, i), 1);
        }
        let c5 = cert_an_srd(5).unwrap();
        assert_eq!(c5.labeling.labels().iter().filter(|&&l| l == Two).count(), 5);
    }

    #[test]
    fn r_n_sums_by_residue() {
        let c = cert_rn_srd(9).unwrap();
        for l in 0..3 {
            assert_eq!(s(&c, B, 3 * l), 5);
            assert_eq!(s(&c, B, 3 * l + 1), 3);
            assert_eq!(s(&c, B, 3 * l + 2), 3);
            for r in 0..3 {
                assert_eq!(s(&c, C, 3 * l + r), 1);
                assert_eq!(s(&c, A, 3 * l + r), 1);
            }
        }
        let c8 = cert_rn_srd(8).unwrap();
        assert_eq!(s(&c8, C, 3), 1);
        assert_eq!(c8.labeling.weight(), 6);
    }

    #[test]
    fn s_n_open_sums() {
        let c = cert_sn_strd(7).unwrap();
        for i in 0..7 {
            assert_eq!(s(&c, A, i), 2);
            assert_eq!(s(&c, B, i), 1);
            assert_eq!(s(&c, C, i), 1);
            assert_eq!(s(&c, D, i), 1);
        }
    }

    #[test]
    fn t_n_strd_even_sums() {
        let c = cert_tn_strd(8).unwrap();
        for i in 0..4 {
            assert_eq!(s(&c, A, 2 * i), 1);
            assert_eq!(s(&c, A, 2 * i + 1), 1);
            assert_eq!(s(&c, B, 2 * i), 1);
            assert_eq!(s(&c, B, 2 * i + 1), 4);
            assert_eq!(s(&c, C, 2 * i), 4);
            assert_eq!(s(&c, C, 2 * i + 1), 1);
            assert_eq!(s(&c, D, 2 * i), 1);
            assert_eq!(s(&c, D, 2 * i + 1), 1);
        }
    }

    #[test]
    fn t_n_strd_literal_odd_fails_only_at_seam() {
        for n in [5, 7, 9, 11] {
            let g = generate(FamilyKind::Tn, n).unwrap();
            let f = t_n_strd_odd_literal(n).unwrap();
            assert_eq!(f.weight(), n as i64);
            let v = validate(&g, &f, Variant::Strd).unwrap();
            assert_eq!(
                v,
                vec![
                    Violation::SumTooLow {
                        vertex: VertexId { class: A, index: n - 1 },
                        sum: 0
                    },
                    Violation::UncoveredMinusOne {
                        vertex: VertexId { class: A, index: n - 1 }
                    }
                ]
            );
        }
    }

    #[test]
    fn t_n_srd_sums() {
        let c = cert_tn_srd(7).unwrap();
        for i in 0..7 {
            assert_eq!(s(&c, A, i), 1);
            assert_eq!(s(&c, B, i), 1);
            assert_eq!(s(&c, C, i), 3);
            assert_eq!(s(&c, D, i), 1);
        }
    }

    #[test]
    fn q_n_3k_sums() {
        let c = cert_qn_srd(12).unwrap();
        for i in 0..12 {
            assert_eq!(s(&c, A, i), if i % 3 == 1 { 2 } else { 1 }, "a{i}");
            assert_eq!(s(&c, B, i), if i % 3 == 0 { 4 } else { 1 }, "b{i}");
            assert_eq!(s(&c, C, i), if i % 3 == 1 { 1 } else { 3 }, "c{i}");
            assert_eq!(s(&c, D, i), 1, "d{i}");
        }
    }

    fn two_witnesses(c: &Certificate, v: VertexId) -> Vec<VertexId> {
        let i = c.graph.index_of(v).unwrap();
        c.graph
            .neighbors(i)
            .iter()
            .filter(|&&j| c.labeling.labels()[j] == Two)
            .map(|&j| c.graph.vertex(j))
            .collect()
    }

    #[test]
    fn q_n_3k_plus_1_coverage_table() {
        let n = 13;
        let k = 4;
        let c = cert_qn_srd(n).unwrap();
        let w = |cl, i: i64| VertexId::wrapped(cl, i, n);
        let rows: &[(VertexId, &[VertexId])] = &[
            (w(A, 3 * k - 4), &[w(A, 3 * k - 3)]),
            (w(C, 3 * k - 4), &[w(D, 3 * k - 4)]),
            (w(A, 3 * k - 2), &[w(A, 3 * k - 3)]),
            (w(A, 3 * k), &[w(A, 0)]),
            (w(B, 3 * k - 2), &[w(B, 3 * k - 1)]),
            (w(B, 3 * k), &[w(B, 3 * k - 1)]),
            (w(C, 3 * k - 3), &[w(D, 3 * k - 3)]),
            (w(D, 3 * k - 2), &[w(D, 3 * k - 3)]),
            (w(C, 3 * k), &[w(D, 3 * k)]),
            (w(D, 3 * k - 1), &[w(D, 3 * k)]),
        ];
        for (v, expect) in rows {
            assert_eq!(c.labeling.get(&c.graph, *v).unwrap(), Label::MinusOne, "{v}");
            assert_eq!(&two_witnesses(&c, *v), expect, "{v}");
        }
    }

    #[test]
    fn q_n_3k_plus_2_coverage_table() {
        let n = 14;
        let k = 4;
        let c = cert_qn_srd(n).unwrap();
        let w = |cl, i: i64| VertexId::wrapped(cl, i, n);
        let rows: &[(VertexId, &[VertexId])] = &[
            (w(A, 3 * k - 6), &[w(A, 3 * k - 5)]),
            (w(B, 3 * k - 6), &[w(B, 3 * k - 7)]),
            (w(C, 3 * k - 6), &[w(D, 3 * k - 6)]),
            (w(A, 3 * k - 4), &[w(A, 3 * k - 5), w(B, 3 * k - 4)]),
            (w(C, 3 * k - 5), &[w(B, 3 * k - 4)]),
            (w(C, 3 * k - 4), &[w(B, 3 * k - 4)]),
            (w(C, 3 * k - 3), &[w(D, 3 * k - 3)]),
            (w(D, 3 * k - 4), &[w(D, 3 * k - 3)]),
            (w(A, 3 * k - 1), &[w(A, 3 * k - 2)]),
            (w(A, 3 * k + 1), &[w(A, 0)]),
            (w(B, 3 * k - 1), &[w(B, 3 * k)]),
            (w(B, 3 * k + 1), &[w(B, 3 * k)]),
            (w(C, 3 * k - 2), &[w(D, 3 * k - 2)]),
            (w(D, 3 * k - 1), &[w(D, 3 * k - 2)]),
            (w(C, 3 * k + 1), &[w(D, 3 * k + 1)]),
            (w(D, 3 * k), &[w(D, 3 * k + 1)]),
        ];
        for (v, expect) in rows {
            assert_eq!(c.labeling.get(&c.graph, *v).unwrap(), Label::MinusOne, "{v}");
            assert_eq!(&two_witnesses(&c, *v), expect, "{v}");
        }
    }

    #[test]
    fn t_n_double_prime_d_sums() {
        for (n, d0, dlast) in [(9, 1, 1), (10, 4, 2), (11, 3, 4)] {
            let c = cert_tn2p_srd(n).unwrap();
            assert_eq!(s(&c, D, 0), d0, "n={n}");
            assert_eq!(s(&c, D, n as i64 - 1), dlast, "n={n}");
            for i in 1..n as i64 - 1 {
                assert_eq!(s(&c, D, i), 1, "n={n} d{i}");
            }
            for i in 0..n as i64 {
                let expect = [5, 4, 2][(i % 3) as usize];
                if i < 3 * (n as i64 / 3) {
                    assert_eq!(s(&c, C, i), expect, "n={n} c{i}");
                }
            }
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h(6), 4);
        assert_eq!(h(7), 6);
        assert_eq!(h(5), 5);
        assert_eq!(h(9), 6);
    }

    #[test]
    fn uncovered_pairs_are_rejected() {
        assert!(matches!(certificate(FamilyKind::Qn, Variant::Strd, 12), Err(Error::NotApplicable(_))));
        assert!(matches!(cert_qn_srd(11), Err(Error::BelowMinimum { min: 12, .. })));
        assert!(matches!(cert_tn_strd(4), Err(Error::BelowMinimum { .. })));
    }
}
