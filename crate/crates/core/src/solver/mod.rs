//! Exact minimum-weight S(T)RD labelings.
//!
//! Two independent methods: a pruned backtracking search over single
//! vertices ([`solve_bruteforce`]) and a cyclic transfer computation over
//! columns ([`solve_profile_dp`]). Both walk vertices column by column
//! (`a_0, b_0, c_0, d_0, a_1, ...`) and return the lexicographically smallest
//! optimal labeling in that order, with `-1 < 1 < 2`.

mod bruteforce;
mod layout;
mod profile;

use std::time::Duration;

use serde::Serialize;

pub use bruteforce::{solve_bruteforce, DEFAULT_NODE_BUDGET};
pub use layout::ColumnLayout;
pub use profile::{solve_profile_dp, solve_profile_dp_with, DpOptions};

use crate::error::Result;
use crate::family::{generate, FamilyKind};
use crate::labeling::{LabelFunction, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    BruteForce,
    ProfileDP,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Search nodes (brute force) or DP state expansions (profile DP).
    pub work: u64,
    /// Boundary seeds solved (profile DP only).
    pub seeds: u64,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub gamma: i64,
    pub witness: LabelFunction,
    pub method: Method,
    pub stats: Stats,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Solved(SolveResult),
    /// Node budget ran out before the search finished.
    Inconclusive { nodes: u64, elapsed: Duration },
}

impl Outcome {
    pub fn solved(&self) -> Option<&SolveResult> {
        match self {
            Outcome::Solved(r) => Some(r),
            Outcome::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossRow {
    pub n: usize,
    pub gamma_bruteforce: Option<i64>,
    pub gamma_dp: i64,
    /// `None` when the brute force was inconclusive.
    pub agree: Option<bool>,
}

/// Runs both solvers for each n and compares the optima.
pub fn cross_validate(
    family: FamilyKind,
    variant: Variant,
    ns: impl IntoIterator<Item = usize>,
    budget: u64,
) -> Result<Vec<CrossRow>> {
    let mut rows = Vec::new();
    for n in ns {
        let g = generate(family, n)?;
        let dp = solve_profile_dp(&g, variant)?;
        let bf = solve_bruteforce(&g, variant, budget)?;
        let gamma_bruteforce = bf.solved().map(|r| r.gamma);
        rows.push(CrossRow {
            n,
            gamma_bruteforce,
            gamma_dp: dp.gamma,
            agree: gamma_bruteforce.map(|b| b == dp.gamma),
        });
    }
    Ok(rows)
}
