use std::time::Instant;

use crate::error::Result;
use crate::family::PolytopeGraph;
use crate::labeling::{Label, LabelFunction, Variant};

use super::{Method, Outcome, SolveResult, Stats};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const LABELS: [i32; 3] = [-1, 1, 2];

struct Search<'a> {
    order: Vec<usize>,
    /// `sum_members[u]`: vertices whose condition sum includes `u`.
    sum_members: Vec<Vec<usize>>,
    adj: &'a PolytopeGraph,
    label: Vec<i32>,
    sum: Vec<i32>,
    open_in_sum: Vec<i32>,
    twos_adjacent: Vec<i32>,
    open_adjacent: Vec<i32>,
    weight: i32,
    best: i32,
    best_labels: Option<Vec<i32>>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn assign(&mut self, u: usize, l: i32) -> bool {
        self.label[u] = l;
        self.weight += l;
        let mut ok = true;
        for k in 0..self.sum_members[u].len() {
            let v = self.sum_members[u][k];
            self.sum[v] += l;
            self.open_in_sum[v] -= 1;
            // (a) even all-2 completions cannot lift the sum to 1
            if self.sum[v] + 2 * self.open_in_sum[v] < 1 {
                ok = false;
            }
        }
        for &v in self.adj.neighbors(u) {
            self.open_adjacent[v] -= 1;
            if l == 2 {
                self.twos_adjacent[v] += 1;
            }
            // (b) a closed -1 vertex without a 2-labeled neighbour
            if self.label[v] == -1 && self.twos_adjacent[v] == 0 && self.open_adjacent[v] == 0 {
                ok = false;
            }
        }
        if l == -1 && self.twos_adjacent[u] == 0 && self.open_adjacent[u] == 0 {
            ok = false;
        }
        ok
    }

    fn unassign(&mut self, u: usize, l: i32) {
        for k in 0..self.sum_members[u].len() {
            let v = self.sum_members[u][k];
            self.sum[v] -= l;
            self.open_in_sum[v] += 1;
        }
        for &v in self.adj.neighbors(u) {
            self.open_adjacent[v] += 1;
            if l == 2 {
                self.twos_adjacent[v] -= 1;
            }
        }
        self.weight -= l;
        self.label[u] = 0;
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.order.len() {
            if self.weight < self.best {
                self.best = self.weight;
                self.best_labels = Some(self.label.clone());
            }
            return;
        }
        let remaining = (self.order.len() - depth) as i32;
        // (c) weight bound: every unassigned vertex contributes at least -1
        if self.weight - remaining >= self.best {
            return;
        }
        let u = self.order[depth];
        for l in LABELS {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            if self.assign(u, l) && self.weight - (remaining - 1) < self.best {
                self.dfs(depth + 1);
            }
            self.unassign(u, l);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Exhaustive search with admissible pruning. Returns
/// [`Outcome::Inconclusive`] if `budget` nodes are not enough to finish.
pub fn solve_bruteforce(g: &PolytopeGraph, variant: Variant, budget: u64) -> Result<Outcome> {
    let start = Instant::now();
    let (rows, n, nv) = (g.rows(), g.n(), g.vertex_count());
    let order: Vec<usize> = (0..nv).map(|pos| (pos % rows) * n + pos / rows).collect();

    let mut sum_members = vec![Vec::new(); nv];
    let mut open_in_sum = vec![0i32; nv];
    for v in 0..nv {
        if variant == Variant::Srd {
            sum_members[v].push(v);
            open_in_sum[v] += 1;
        }
        for &u in g.neighbors(v) {
            sum_members[u].push(v);
            open_in_sum[v] += 1;
        }
    }
    let open_adjacent = (0..nv).map(|v| g.neighbors(v).len() as i32).collect();

    let mut s = Search {
        order,
        sum_members,
        adj: g,
        label: vec![0; nv],
        sum: vec![0; nv],
        open_in_sum,
        twos_adjacent: vec![0; nv],
        open_adjacent,
        weight: 0,
        // Strictly above the largest possible weight.
        best: 2 * nv as i32 + 1,
        best_labels: None,
        nodes: 0,
        budget,
        exhausted: false,
    };
    // A vertex whose condition set is empty can never reach sum 1.
    if (0..nv).any(|v| s.open_in_sum[v] == 0) {
        return Err(crate::error::Error::NotApplicable(
            "graph has a vertex with empty neighbourhood; no admissible labeling".into(),
        ));
    }
    s.dfs(0);
    let elapsed = start.elapsed();
    if s.exhausted {
        return Ok(Outcome::Inconclusive {
            nodes: s.nodes,
            elapsed,
        });
    }
    let labels = s.best_labels.ok_or_else(|| {
        crate::error::Error::NotApplicable("no admissible labeling exists".into())
    })?;
    let labels = labels
        .into_iter()
        .map(|l| Label::from_value(l as i64).expect("search assigns only -1, 1, 2"))
        .collect();
    Ok(Outcome::Solved(SolveResult {
        gamma: s.best as i64,
        witness: LabelFunction::new(g, labels)?,
        method: Method::BruteForce,
        stats: Stats {
            work: s.nodes,
            seeds: 0,
        },
        elapsed,
    }))
}
