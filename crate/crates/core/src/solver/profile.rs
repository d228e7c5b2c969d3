//! Cyclic transfer computation over columns.
//!
//! A state is the pair (labels of column i-1, labels of column i). Moving to
//! column i+1 finalises both conditions for every vertex of column i, since
//! its neighbourhood lies in columns i-1..=i+1. The cycle is closed by fixing
//! columns 0 and 1 as a boundary seed and checking columns n-1 and 0 once
//! the chain reaches column n-1.

use std::time::Instant;

use rayon::prelude::*;

use crate::certificate::certificate;
use crate::error::{Error, Result};
use crate::family::PolytopeGraph;
use crate::labeling::{is_admissible, Label, LabelFunction, Variant};

use super::layout::ColumnLayout;
use super::{Method, SolveResult, Stats};

const INF: i32 = i32::MAX / 4;
const SEED_CHUNK: usize = 256;

#[derive(Clone, Debug, Default)]
pub struct DpOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Start from the matching certificate's weight as the upper bound.
    pub certificate_bound: bool,
}

/// Column codes are base-3 numbers, row 0 most significant, digit 0/1/2 for
/// label -1/1/2, so numeric order is lexicographic label order.
struct Transfer {
    k: usize,
    rows: usize,
    n: usize,
    weight: Vec<i32>,
    /// `ok[(u * k + c) * k + q]`: column c passes with neighbours u and q.
    ok: Vec<bool>,
    /// CSR over pair states `u * k + c`: admissible next columns, ascending.
    start: Vec<u32>,
    next: Vec<u16>,
}

impl Transfer {
    fn new(layout: &ColumnLayout, variant: Variant) -> Self {
        let rows = layout.rows;
        let k = 3usize.pow(rows as u32);
        let value = [-1i32, 1, 2];
        let labels: Vec<Vec<i32>> = (0..k)
            .map(|code| {
                (0..rows)
                    .map(|r| value[(code / 3usize.pow((rows - 1 - r) as u32)) % 3])
                    .collect()
            })
            .collect();
        let weight = labels.iter().map(|l| l.iter().sum()).collect();
        let mut ok = vec![false; k * k * k];
        for u in 0..k {
            for c in 0..k {
                for q in 0..k {
                    let cols = [&labels[u], &labels[c], &labels[q]];
                    ok[(u * k + c) * k + q] = (0..rows).all(|r| {
                        let own = labels[c][r];
                        let mut s = if variant == Variant::Srd { own } else { 0 };
                        let mut two = false;
                        for &(r2, off) in &layout.neighbors[r] {
                            let l = cols[(off + 1) as usize][r2];
                            s += l;
                            two |= l == 2;
                        }
                        s >= 1 && (own != -1 || two)
                    });
                }
            }
        }
        let mut start = Vec::with_capacity(k * k + 1);
        let mut next = Vec::new();
        for p in 0..k * k {
            start.push(next.len() as u32);
            for q in 0..k {
                if ok[p * k + q] {
                    next.push(q as u16);
                }
            }
        }
        start.push(next.len() as u32);
        Transfer {
            k,
            rows,
            n: layout.n,
            weight,
            ok,
            start,
            next,
        }
    }

    fn succ(&self, p: usize) -> &[u16] {
        &self.next[self.start[p] as usize..self.start[p + 1] as usize]
    }

    fn check(&self, u: usize, c: usize, q: usize) -> bool {
        self.ok[(u * self.k + c) * self.k + q]
    }

    /// `suffix[l][p]`: cheapest `l` further columns from state p, ignoring
    /// the cyclic closure. A lower bound for every seed.
    fn suffix_table(&self, len: usize) -> Vec<Vec<i32>> {
        self.suffix_from(vec![0i32; self.k * self.k], len)
    }

    /// As `suffix_table`, but the last state must be able to close the
    /// cycle onto a seed starting with column `x0`.
    fn closing_suffix(&self, x0: usize, len: usize) -> Vec<Vec<i32>> {
        let k = self.k;
        // Closing needs column n-1 to pass with x0 next, and column 0 to
        // pass for some x1.
        let base = (0..k * k)
            .map(|p| {
                let (u, c) = (p / k, p % k);
                if self.check(u, c, x0) && !self.succ(c * k + x0).is_empty() {
                    0
                } else {
                    INF
                }
            })
            .collect();
        self.suffix_from(base, len)
    }

    /// Per column x: cheapest closed walk of n columns through x in the
    /// relaxed column graph, where c may precede q if column c passes for
    /// some left neighbour and column q for some right neighbour. A lower
    /// bound for every seed starting with x.
    fn closed_column_walks(&self) -> Vec<i32> {
        let k = self.k;
        let left: Vec<bool> = (0..k * k).map(|cq| (0..k).any(|u| self.check(u, cq / k, cq % k))).collect();
        let edge: Vec<bool> = (0..k * k)
            .map(|cq| left[cq] && !self.succ(cq).is_empty())
            .collect();
        (0..k)
            .into_par_iter()
            .map(|x| {
                let mut dist = vec![INF; k];
                dist[x] = self.weight[x];
                for step in 1..=self.n {
                    let mut nd = vec![INF; k];
                    for c in (0..k).filter(|&c| dist[c] < INF) {
                        for q in 0..k {
                            if edge[c * k + q] {
                                let add = if step == self.n { 0 } else { self.weight[q] };
                                nd[q] = nd[q].min(dist[c] + add);
                            }
                        }
                    }
                    dist = nd;
                }
                dist[x]
            })
            .collect()
    }

    fn suffix_from(&self, base: Vec<i32>, len: usize) -> Vec<Vec<i32>> {
        let p_count = self.k * self.k;
        let mut table = vec![base];
        for l in 1..=len {
            let prev = &table[l - 1];
            let row: Vec<i32> = (0..p_count)
                .into_par_iter()
                .map(|p| {
                    let c = p % self.k;
                    self.succ(p)
                        .iter()
                        .map(|&q| {
                            let q = q as usize;
                            let rest = prev[c * self.k + q];
                            if rest >= INF {
                                INF
                            } else {
                                self.weight[q] + rest
                            }
                        })
                        .min()
                        .unwrap_or(INF)
                })
                .collect();
            table.push(row);
        }
        table
    }

    fn closes(&self, p: usize, x0: usize, x1: usize) -> bool {
        let (u, c) = (p / self.k, p % self.k);
        self.check(u, c, x0) && self.check(c, x0, x1)
    }

    /// Best total for one seed if it is at most `bound`, plus expansions.
    fn seed_total(&self, seed: usize, bound: i32, suffix: &[Vec<i32>]) -> (Option<i32>, u64) {
        let k = self.k;
        let (x0, x1) = (seed / k, seed % k);
        let steps = self.n - 2;
        let mut cur = vec![INF; k * k];
        let mut nxt = vec![INF; k * k];
        let mut active = vec![seed];
        let mut touched = Vec::new();
        cur[seed] = self.weight[x0] + self.weight[x1];
        let mut work = 0u64;
        for step in 1..=steps {
            let remaining = steps - step;
            for &p in &active {
                let cost = cur[p];
                let c = p % k;
                work += 1;
                for &q in self.succ(p) {
                    let np = c * k + q as usize;
                    let nc = cost + self.weight[q as usize];
                    let lb = suffix[remaining][np];
                    if lb >= INF || nc + lb > bound {
                        continue;
                    }
                    if nxt[np] == INF {
                        touched.push(np);
                    }
                    if nc < nxt[np] {
                        nxt[np] = nc;
                    }
                }
                cur[p] = INF;
            }
            std::mem::swap(&mut cur, &mut nxt);
            std::mem::swap(&mut active, &mut touched);
            touched.clear();
            if active.is_empty() {
                return (None, work);
            }
        }
        let best = active
            .iter()
            .filter(|&&p| self.closes(p, x0, x1))
            .map(|&p| cur[p])
            .min();
        (best.filter(|&b| b <= bound), work)
    }

    /// Lexicographically smallest optimal column sequence for `seed`.
    fn witness(&self, seed: usize, total: i32) -> Vec<usize> {
        let k = self.k;
        let (x0, x1) = (seed / k, seed % k);
        let n = self.n;
        // go[i][p]: cheapest cost of columns i+1..n-1 from state (x_{i-1}, x_i)
        let mut go = vec![vec![INF; k * k]; n];
        for p in 0..k * k {
            if self.closes(p, x0, x1) {
                go[n - 1][p] = 0;
            }
        }
        for i in (1..n - 1).rev() {
            let (head, tail) = go.split_at_mut(i + 1);
            let later = &tail[0];
            for (p, slot) in head[i].iter_mut().enumerate() {
                let c = p % k;
                *slot = self
                    .succ(p)
                    .iter()
                    .map(|&q| {
                        let rest = later[c * k + q as usize];
                        if rest >= INF {
                            INF
                        } else {
                            self.weight[q as usize] + rest
                        }
                    })
                    .min()
                    .unwrap_or(INF);
            }
        }
        debug_assert_eq!(self.weight[x0] + self.weight[x1] + go[1][seed], total);
        let mut cols = vec![x0, x1];
        let mut p = seed;
        for i in 1..n - 1 {
            let c = p % k;
            let q = self
                .succ(p)
                .iter()
                .map(|&q| q as usize)
                .find(|&q| {
                    let rest = go[i + 1][c * k + q];
                    rest < INF && self.weight[q] + rest == go[i][p]
                })
                .expect("an optimal successor exists");
            cols.push(q);
            p = c * k + q;
        }
        cols
    }

    fn labels_of(&self, cols: &[usize], g: &PolytopeGraph) -> Vec<Label> {
        let mut out = vec![Label::One; g.vertex_count()];
        for (col, &code) in cols.iter().enumerate() {
            for r in 0..self.rows {
                let digit = (code / 3usize.pow((self.rows - 1 - r) as u32)) % 3;
                out[r * self.n + col] = Label::ALL[digit];
            }
        }
        out
    }
}

pub fn solve_profile_dp(g: &PolytopeGraph, variant: Variant) -> Result<SolveResult> {
    solve_profile_dp_with(
        g,
        variant,
        &DpOptions {
            threads: None,
            certificate_bound: true,
        },
    )
}

pub fn solve_profile_dp_with(g: &PolytopeGraph, variant: Variant, opts: &DpOptions) -> Result<SolveResult> {
    match opts.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
            pool.install(|| run(g, variant, opts))
        }
        None => run(g, variant, opts),
    }
}

fn initial_bound(g: &PolytopeGraph, variant: Variant, opts: &DpOptions) -> i32 {
    let all_ones = LabelFunction::constant(g, Label::One);
    let mut bound = if is_admissible(g, &all_ones, variant).unwrap_or(false) {
        g.vertex_count() as i32
    } else {
        2 * g.vertex_count() as i32
    };
    if opts.certificate_bound {
        if let Ok(cert) = certificate(g.family(), variant, g.n()) {
            if cert.graph == *g && is_admissible(g, &cert.labeling, variant).unwrap_or(false) {
                bound = bound.min(cert.labeling.weight() as i32);
            }
        }
    }
    bound
}

/// Runs the seeds, sorted by lower bound, in a fixed chunk schedule. The
/// bound is tightened only between chunks, so results do not depend on
/// scheduling.
fn sweep(
    t: &Transfer,
    seeds: &[(i32, usize)],
    bound: &mut i32,
    suffix: &[Vec<i32>],
    hits: &mut Vec<(usize, i32)>,
    stats: &mut Stats,
) {
    let (mut at, mut size) = (0, 1);
    while at < seeds.len() && seeds[at].0 <= *bound {
        // Chunks double up to SEED_CHUNK so the bound tightens early.
        let chunk = &seeds[at..(at + size).min(seeds.len())];
        at += chunk.len();
        size = (size * 2).min(SEED_CHUNK);
        let b = *bound;
        let results: Vec<(usize, Option<i32>, u64)> = chunk
            .par_iter()
            .map(|&(lb, p)| {
                if lb > b {
                    (p, None, 0)
                } else {
                    let (tot, w) = t.seed_total(p, b, suffix);
                    (p, tot, w)
                }
            })
            .collect();
        for (p, tot, w) in results {
            stats.work += w;
            stats.seeds += (w > 0) as u64;
            if let Some(tot) = tot {
                hits.push((p, tot));
                *bound = (*bound).min(tot);
            }
        }
    }
}

fn run(g: &PolytopeGraph, variant: Variant, opts: &DpOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let layout = ColumnLayout::of(g)?;
    let t = Transfer::new(&layout, variant);
    let k = t.k;
    let steps = t.n - 2;
    let open = t.suffix_table(steps);

    // Seeds are grouped by their first column x0. The open table orders the
    // groups; each group then gets the tighter bound of its closing table.
    let walks = t.closed_column_walks();
    let mut groups: Vec<(i32, usize)> = (0..k)
        .filter_map(|x0| {
            (0..k)
                .map(|x1| x0 * k + x1)
                .filter(|&p| open[steps][p] < INF)
                .map(|p| t.weight[x0] + t.weight[p % k] + open[steps][p])
                .min()
                .filter(|_| walks[x0] < INF)
                .map(|lb| (lb.max(walks[x0]), x0))
        })
        .collect();
    groups.sort_unstable();

    let mut bound = initial_bound(g, variant, opts);
    let mut hits = Vec::new();
    let mut stats = Stats::default();
    for (group_lb, x0) in groups {
        if group_lb > bound {
            break;
        }
        let closing = t.closing_suffix(x0, steps);
        let mut seeds: Vec<(i32, usize)> = (0..k)
            .map(|x1| x0 * k + x1)
            .filter(|&p| closing[steps][p] < INF)
            .map(|p| (t.weight[x0] + t.weight[p % k] + closing[steps][p], p))
            .collect();
        seeds.sort_unstable();
        sweep(&t, &seeds, &mut bound, &closing, &mut hits, &mut stats);
    }

    // Every seed whose lower bound is at most gamma ran with a bound of at
    // least gamma, so all optimal seeds are among the hits.
    let gamma = hits
        .iter()
        .map(|&(_, tot)| tot)
        .min()
        .ok_or_else(|| Error::NotApplicable("no admissible labeling exists".into()))?;
    let seed = hits
        .iter()
        .filter(|&&(_, tot)| tot == gamma)
        .map(|&(p, _)| p)
        .min()
        .expect("gamma attained");
    let cols = t.witness(seed, gamma);
    let witness = LabelFunction::new(g, t.labels_of(&cols, g))?;
    debug_assert_eq!(witness.weight(), gamma as i64);
    Ok(SolveResult {
        gamma: gamma as i64,
        witness,
        method: Method::ProfileDP,
        stats,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate, FamilyKind};
    use crate::labeling::validate;

    #[test]
    fn a_n_is_zero() {
        for n in 5..=9 {
            let g = generate(FamilyKind::An, n).unwrap();
            let r = solve_profile_dp(&g, Variant::Srd).unwrap();
            assert_eq!(r.gamma, 0, "n={n}");
            assert!(validate(&g, &r.witness, Variant::Srd).unwrap().is_empty());
        }
    }

    #[test]
    fn theorem_examples() {
        for (f, v, n, want) in [
            (FamilyKind::Sn, Variant::Strd, 7, 7),
            (FamilyKind::Rn, Variant::Srd, 9, 6),
            (FamilyKind::Tn, Variant::Strd, 8, 8),
        ] {
            let g = generate(f, n).unwrap();
            let r = solve_profile_dp(&g, v).unwrap();
            assert_eq!(r.gamma, want, "{f} {v} n={n}");
            assert_eq!(r.witness.weight(), want);
            assert!(validate(&g, &r.witness, v).unwrap().is_empty());
        }
    }

    #[test]
    fn refuses_non_banded_graph() {
        let base = generate(FamilyKind::Rn, 7).unwrap();
        let mut edges: Vec<_> = base.edges().map(|(u, v)| (base.vertex(u), base.vertex(v))).collect();
        edges.push(("a0".parse().unwrap(), "a3".parse().unwrap()));
        let g = PolytopeGraph::from_edges(FamilyKind::Rn, 7, edges).unwrap();
        assert!(matches!(solve_profile_dp(&g, Variant::Srd), Err(Error::NotBanded(_))));
    }

    #[test]
    fn bound_source_does_not_change_result() {
        let g = generate(FamilyKind::Tn, 8).unwrap();
        let with = solve_profile_dp(&g, Variant::Strd).unwrap();
        let without = solve_profile_dp_with(
            &g,
            Variant::Strd,
            &DpOptions {
                threads: Some(1),
                certificate_bound: false,
            },
        )
        .unwrap();
        assert_eq!(with.gamma, without.gamma);
        assert_eq!(with.witness, without.witness);
    }
}
