//! The convex polytope graph families and their text formats.
//!
//! Every family is a union of edge orbits under the cyclic shift
//! `i -> i + 1 (mod n)`. A vertex is a row letter (`a`..`d`) and a column
//! index, and every edge joins columns at cyclic distance 0 or 1.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::Variant;

/// Smallest column count accepted by [`generate`].
pub const MIN_COLUMNS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexClass {
    A,
    B,
    C,
    D,
}

impl VertexClass {
    pub const ALL: [VertexClass; 4] = [VertexClass::A, VertexClass::B, VertexClass::C, VertexClass::D];

    pub fn row(self) -> usize {
        self as usize
    }

    pub fn from_row(row: usize) -> Option<Self> {
        Self::ALL.get(row).copied()
    }

    pub fn letter(self) -> char {
        match self {
            VertexClass::A => 'a',
            VertexClass::B => 'b',
            VertexClass::C => 'c',
            VertexClass::D => 'd',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'a' => Some(VertexClass::A),
            'b' => Some(VertexClass::B),
            'c' => Some(VertexClass::C),
            'd' => Some(VertexClass::D),
            _ => None,
        }
    }
}

/// A vertex `x_i`. Ordering is the canonical one: class first, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub class: VertexClass,
    pub index: usize,
}

impl VertexId {
    /// Builds `class_{index mod n}`; accepts negative offsets.
    pub fn wrapped(class: VertexClass, index: i64, n: usize) -> Self {
        VertexId {
            class,
            index: index.rem_euclid(n as i64) as usize,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class.letter(), self.index)
    }
}

impl FromStr for VertexId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut chars = s.chars();
        let class = chars
            .next()
            .and_then(VertexClass::from_letter)
            .ok_or_else(|| format!("bad vertex name {s:?}"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad vertex name {s:?}"));
        }
        let index = digits.parse().map_err(|_| format!("bad vertex name {s:?}"))?;
        Ok(VertexId { class, index })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    An,
    Rn,
    Sn,
    Tn,
    Qn,
    #[serde(rename = "Tn2p")]
    TnDoublePrime,
}

/// One edge orbit `{X_{i+p}, Y_{i+q}}`, i = 0..n-1.
type Orbit = (VertexClass, i64, VertexClass, i64);

use VertexClass::{A, B, C, D};

const A_N: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (C, 0, C, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (A, 1, B, 0),
    (B, 1, C, 0),
];

const R_N: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (C, 0, C, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (A, 1, B, 0),
];

// R_n with a d-row hung off the c-row.
const S_N: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (C, 0, C, 1),
    (D, 0, D, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (C, 0, D, 0),
    (A, 1, B, 0),
];

const T_N: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (C, 0, C, 1),
    (D, 0, D, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (C, 0, D, 0),
    (A, 1, B, 0),
    (C, 0, D, 1),
];

const Q_N: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (D, 0, D, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (C, 0, D, 0),
    (B, 1, C, 0),
];

const T_N_DOUBLE_PRIME: &[Orbit] = &[
    (A, 0, A, 1),
    (B, 0, B, 1),
    (D, 0, D, 1),
    (A, 0, B, 0),
    (B, 0, C, 0),
    (C, 0, D, 0),
    (B, 1, C, 0),
    (A, 1, B, 0),
];

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::An,
        FamilyKind::Rn,
        FamilyKind::Sn,
        FamilyKind::Tn,
        FamilyKind::Qn,
        FamilyKind::TnDoublePrime,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::An => "An",
            FamilyKind::Rn => "Rn",
            FamilyKind::Sn => "Sn",
            FamilyKind::Tn => "Tn",
            FamilyKind::Qn => "Qn",
            FamilyKind::TnDoublePrime => "Tn2p",
        }
    }

    pub fn rows(self) -> usize {
        match self {
            FamilyKind::An | FamilyKind::Rn => 3,
            _ => 4,
        }
    }

    fn orbits(self) -> &'static [Orbit] {
        match self {
            FamilyKind::An => A_N,
            FamilyKind::Rn => R_N,
            FamilyKind::Sn => S_N,
            FamilyKind::Tn => T_N,
            FamilyKind::Qn => Q_N,
            FamilyKind::TnDoublePrime => T_N_DOUBLE_PRIME,
        }
    }

    /// Number of edge orbits, so the edge count is `orbit_count() * n`.
    pub fn orbit_count(self) -> usize {
        self.orbits().len()
    }

    /// Per-class degree, indexed by row.
    pub fn degree_table(self) -> &'static [usize] {
        match self {
            FamilyKind::An => &[4, 6, 4],
            FamilyKind::Rn => &[4, 5, 3],
            FamilyKind::Sn => &[4, 5, 4, 3],
            FamilyKind::Tn => &[4, 5, 5, 4],
            FamilyKind::Qn => &[3, 5, 3, 3],
            FamilyKind::TnDoublePrime => &[4, 6, 3, 3],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| format!("unknown family {s:?} (expected one of An, Rn, Sn, Tn, Qn, Tn2p)"))
    }
}

/// Simple undirected graph on `rows * n` vertices laid out in rows and
/// cyclic columns. Vertices are numbered canonically: `row * n + index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeGraph {
    family: FamilyKind,
    n: usize,
    rows: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Builds the family graph on `n` columns.
pub fn generate(family: FamilyKind, n: usize) -> Result<PolytopeGraph> {
    if n < MIN_COLUMNS {
        return Err(Error::BelowMinimum {
            family,
            n,
            min: MIN_COLUMNS,
        });
    }
    let rows = family.rows();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows * n];
    let mut edge_count = 0;
    for &(x, p, y, q) in family.orbits() {
        for i in 0..n as i64 {
            let u = VertexId::wrapped(x, i + p, n);
            let v = VertexId::wrapped(y, i + q, n);
            let (u, v) = (u.class.row() * n + u.index, v.class.row() * n + v.index);
            if u == v || !adj[u].insert(v) || !adj[v].insert(u) {
                return Err(Error::Inconsistent(format!(
                    "{family} n={n}: orbit ({x:?}{p:+},{y:?}{q:+}) collides at i={i}"
                )));
            }
            edge_count += 1;
        }
    }
    Ok(PolytopeGraph {
        family,
        n,
        rows,
        adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        edge_count,
    })
}

impl PolytopeGraph {
    /// Builds a graph from an explicit edge list. Only simplicity and vertex
    /// ranges are checked; family structure is not.
    pub fn from_edges(
        family: FamilyKind,
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let rows = family.rows();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows * n];
        let mut edge_count = 0;
        let idx = |v: VertexId| -> Result<usize> {
            if v.class.row() >= rows || v.index >= n {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            Ok(v.class.row() * n + v.index)
        };
        let mut pairs = Vec::new();
        for (u, v) in edges {
            pairs.push((idx(u)?, idx(v)?, u, v));
        }
        for (iu, iv, u, v) in pairs {
            if iu == iv {
                return Err(Error::Inconsistent(format!("self-loop at {u}")));
            }
            if !adj[iu].insert(iv) || !adj[iv].insert(iu) {
                return Err(Error::Inconsistent(format!("duplicate edge {u} {v}")));
            }
            edge_count += 1;
        }
        Ok(PolytopeGraph {
            family,
            n,
            rows,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            edge_count,
        })
    }

    pub fn family(&self) -> FamilyKind {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn identity(&self) -> String {
        format!("{} n={}", self.family, self.n)
    }

    pub fn index_of(&self, v: VertexId) -> Result<usize> {
        if v.class.row() >= self.rows || v.index >= self.n {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(v.class.row() * self.n + v.index)
    }

    pub fn vertex(&self, idx: usize) -> VertexId {
        VertexId {
            class: VertexClass::from_row(idx / self.n).expect("row in range"),
            index: idx % self.n,
        }
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex(i))
    }

    /// Open neighbourhood by canonical index, sorted.
    pub fn neighbors(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.adj[self.index_of(v)?].len())
    }

    pub fn open_neighborhood(&self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let i = self.index_of(v)?;
        Ok(self.adj[i].iter().map(|&j| self.vertex(j)).collect())
    }

    pub fn closed_neighborhood(&self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let mut set = self.open_neighborhood(v)?;
        set.insert(v);
        Ok(set)
    }

    /// Edges `(u, v)` with `u < v` in canonical order, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `table[x][y]` = number of class-`y` vertices in the neighbourhood
    /// (closed for SRD, open for STRD) of any class-`x` vertex.
    pub fn class_sum_coefficients(&self, variant: Variant) -> Result<Vec<Vec<i64>>> {
        let mut table = vec![vec![0i64; self.rows]; self.rows];
        for x in 0..self.rows {
            for col in 0..self.n {
                let idx = x * self.n + col;
                let mut row = vec![0i64; self.rows];
                if variant == Variant::Srd {
                    row[x] += 1;
                }
                for &j in &self.adj[idx] {
                    row[j / self.n] += 1;
                }
                if col == 0 {
                    table[x] = row;
                } else if table[x] != row {
                    return Err(Error::Inconsistent(format!(
                        "class {} coefficients differ at {}: {:?} vs {:?}",
                        self.vertex(idx).class.letter(),
                        self.vertex(idx),
                        row,
                        table[x]
                    )));
                }
            }
        }
        Ok(table)
    }

    /// Edge-list text: header, then one sorted `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# family={} n={}\n", self.family, self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.vertex(u), self.vertex(v)));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"{}_{}\" {{\n", self.family, self.n);
        for v in self.vertices() {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {} -- {};\n", self.vertex(u), self.vertex(v)));
        }
        out.push_str("}\n");
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (family, n) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => break parse_graph_header(l, i + 1)?,
                None => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: "missing header".into(),
                    })
                }
            }
        };
        let mut edges = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `<u> <v>`, got {line:?}"),
                });
            }
            let parse = |s: &str| {
                s.parse::<VertexId>().map_err(|msg| Error::Parse { line: i + 1, msg })
            };
            edges.push((parse(parts[0])?, parse(parts[1])?));
        }
        PolytopeGraph::from_edges(family, n, edges)
    }
}

/// Parses `key=value` pairs from a `# ...` header line.
pub(crate) fn header_fields(line: &str, lineno: usize) -> Result<Vec<(String, String)>> {
    let body = line.trim().strip_prefix('#').ok_or_else(|| Error::Parse {
        line: lineno,
        msg: "header must start with '#'".into(),
    })?;
    body.split_whitespace()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: format!("bad header field {kv:?}"),
                })
        })
        .collect()
}

pub(crate) fn parse_graph_header(line: &str, lineno: usize) -> Result<(FamilyKind, usize)> {
    let fields = header_fields(line, lineno)?;
    let get = |key: &str| {
        fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("header lacks {key}="),
            })
    };
    let family = get("family")?
        .parse()
        .map_err(|msg| Error::Parse { line: lineno, msg })?;
    let n = get("n")?.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: "n must be a non-negative integer".into(),
    })?;
    Ok((family, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|s| v(s)).collect()
    }

    #[test]
    fn rejects_small_n() {
        let err = generate(FamilyKind::An, 4).unwrap_err();
        assert!(err.to_string().contains("below minimum 5"), "{err}");
    }

    #[test]
    fn a_n_closed_neighborhood() {
        let g = generate(FamilyKind::An, 7).unwrap();
        assert_eq!(
            g.closed_neighborhood(v("a2")).unwrap(),
            set(&["a1", "a2", "a3", "b1", "b2"])
        );
    }

    #[test]
    fn s_n_d_vertex_neighborhood() {
        let g = generate(FamilyKind::Sn, 6).unwrap();
        assert_eq!(
            g.closed_neighborhood(v("d0")).unwrap(),
            set(&["c0", "d5", "d0", "d1"])
        );
    }

    #[test]
    fn t_n_d_vertex_neighborhood() {
        let g = generate(FamilyKind::Tn, 8).unwrap();
        assert_eq!(
            g.closed_neighborhood(v("d3")).unwrap(),
            set(&["c2", "c3", "d2", "d3", "d4"])
        );
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let g = generate(FamilyKind::An, 5).unwrap();
        assert!(matches!(g.closed_neighborhood(v("d0")), Err(Error::UnknownVertex(_))));
        assert!(matches!(g.closed_neighborhood(v("a5")), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn coefficient_rows_match_aggregated_inequalities() {
        let a = generate(FamilyKind::An, 9).unwrap();
        assert_eq!(a.class_sum_coefficients(Variant::Srd).unwrap()[0], vec![3, 2, 0]);
        let t = generate(FamilyKind::Tn, 9).unwrap();
        assert_eq!(t.class_sum_coefficients(Variant::Strd).unwrap()[0], vec![2, 2, 0, 0]);
        let q = generate(FamilyKind::Qn, 12).unwrap();
        assert_eq!(q.class_sum_coefficients(Variant::Srd).unwrap()[3], vec![0, 0, 1, 3]);
    }

    #[test]
    fn non_uniform_class_is_reported() {
        let mut edges: Vec<(VertexId, VertexId)> = {
            let g = generate(FamilyKind::Rn, 6).unwrap();
            g.edges().map(|(u, w)| (g.vertex(u), g.vertex(w))).collect()
        };
        edges.push((v("a0"), v("c3")));
        let g = PolytopeGraph::from_edges(FamilyKind::Rn, 6, edges).unwrap();
        assert!(matches!(
            g.class_sum_coefficients(Variant::Srd),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn vertex_names_parse_strictly() {
        assert_eq!(v("b12"), VertexId { class: VertexClass::B, index: 12 });
        assert!("e0".parse::<VertexId>().is_err());
        assert!("a".parse::<VertexId>().is_err());
        assert!("a-1".parse::<VertexId>().is_err());
    }

    #[test]
    fn edge_list_header_and_order() {
        let g = generate(FamilyKind::An, 5).unwrap();
        let text = g.to_edge_list();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# family=An n=5"));
        assert_eq!(lines.next(), Some("a0 a1"));
        assert_eq!(lines.next(), Some("a0 a4"));
        assert_eq!(lines.next(), Some("a0 b0"));
        assert_eq!(text.lines().count(), 36);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn dot_lists_every_vertex() {
        let g = generate(FamilyKind::Rn, 5).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph \"Rn_5\" {"));
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 15);
        assert_eq!(dot.matches(" -- ").count(), 30);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let e = vec![(v("a0"), v("a1")), (v("a1"), v("a0"))];
        assert!(PolytopeGraph::from_edges(FamilyKind::An, 5, e).is_err());
    }
}
