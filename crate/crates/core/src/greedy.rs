//! Greedy search for tight occurrences of a permutation.
//!
//! An instance fixes `k` consecutive host rows starting at `base_row`; the
//! one-entry in column `j` of the pattern must land in host row
//! `r_j = base_row - 1 + π⁻¹(j)`. Step `i` inspects host column `i` in the
//! row of the current target: a zero stalls, a one advances the target, and
//! a one in the row of the last target completes the occurrence.

use rayon::prelude::*;

use crate::error::{domain, invalid, Result};
use crate::matrix::{BinaryMatrix, Embedding, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Stall,
    Move,
    Found,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Stall => "stall",
            Outcome::Move => "move",
            Outcome::Found => "found",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    /// 1-based host column inspected; equals the step number.
    pub column: usize,
    /// 1-based host row inspected.
    pub row: usize,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceTrace {
    pub base_row: usize,
    pub steps: Vec<Step>,
    /// Columns where the target advanced, including the completing column.
    pub matched_columns: Vec<usize>,
}

impl InstanceTrace {
    pub fn found(&self) -> bool {
        matches!(self.steps.last(), Some(s) if s.outcome == Outcome::Found)
    }

    /// Moves including the completing step.
    pub fn moves(&self) -> usize {
        self.steps.iter().filter(|s| s.outcome != Outcome::Stall).count()
    }

    /// `true` if this instance advanced at 1-based step `j`.
    pub fn moved_at(&self, j: usize) -> bool {
        self.steps.get(j - 1).is_some_and(|s| s.outcome != Outcome::Stall)
    }

    pub fn embedding(&self, k: usize) -> Option<Embedding> {
        self.found().then(|| Embedding {
            row_map: (self.base_row..self.base_row + k).collect(),
            col_map: self.matched_columns.clone(),
        })
    }
}

pub fn run_instance(host: &BinaryMatrix, base_row: usize, p: &Permutation) -> Result<InstanceTrace> {
    let k = p.size();
    if base_row == 0 || base_row + k - 1 > host.rows() {
        return invalid(format!(
            "base row {base_row} with k = {k} does not fit in {} host rows",
            host.rows()
        ));
    }
    let target_rows: Vec<usize> = p.inverse().images().iter().map(|&i| base_row - 1 + i).collect();
    let mut steps = Vec::new();
    let mut matched = Vec::with_capacity(k);
    let mut target = 0;
    for column in 1..=host.cols() {
        let row = target_rows[target];
        let outcome = if !host.get(row, column) {
            Outcome::Stall
        } else if target + 1 == k {
            Outcome::Found
        } else {
            Outcome::Move
        };
        steps.push(Step { column, row, outcome });
        if outcome != Outcome::Stall {
            matched.push(column);
            target += 1;
        }
        if outcome == Outcome::Found {
            break;
        }
    }
    Ok(InstanceTrace { base_row, steps, matched_columns: matched })
}

/// One instance per window of `k` consecutive rows, ordered by base row.
pub fn run_all_instances(host: &BinaryMatrix, p: &Permutation) -> Result<Vec<InstanceTrace>> {
    let k = p.size();
    if host.rows() < k {
        return invalid(format!("host has {} rows, fewer than k = {k}", host.rows()));
    }
    (1..=host.rows() - k + 1).into_par_iter().map(|b| run_instance(host, b, p)).collect()
}

/// First tight occurrence found by the greedy instances, smallest base row first.
///
/// Only sound: `None` does not mean the host avoids `p`.
pub fn find_tight_occurrence(host: &BinaryMatrix, p: &Permutation) -> Result<Option<Embedding>> {
    let k = p.size();
    if host.rows() < k {
        return invalid(format!("host has {} rows, fewer than k = {k}", host.rows()));
    }
    Ok((1..=host.rows() - k + 1).into_par_iter().find_map_first(|b| {
        run_instance(host, b, p).expect("base row in range").embedding(k)
    }))
}

/// Indices (1-based, ascending) of the `count` lines with the most zeros;
/// ties prefer the lower index.
fn worst_lines(zeros: &[usize], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..zeros.len()).collect();
    order.sort_by(|&a, &b| zeros[b].cmp(&zeros[a]).then(a.cmp(&b)));
    let mut picked: Vec<usize> = order[..count].iter().map(|i| i + 1).collect();
    picked.sort_unstable();
    picked
}

/// Deletes the `k` rows and `k` columns with the most zeros from a `4k x 4k`
/// host and searches the remaining `3k x 3k` matrix for a tight occurrence.
/// The embedding is returned in the original host's coordinates.
pub fn robust_find(host: &BinaryMatrix, p: &Permutation) -> Result<Option<Embedding>> {
    let k = p.size();
    if host.rows() != 4 * k || host.cols() != 4 * k {
        return invalid(format!("robust_find needs a {0}x{0} host, got {1}x{2}", 4 * k, host.rows(), host.cols()));
    }
    let row_zeros: Vec<usize> = (1..=host.rows()).map(|i| host.zeros_in_row(i)).collect();
    let col_zeros: Vec<usize> = (1..=host.cols()).map(|j| host.zeros_in_col(j)).collect();
    let drop_rows = worst_lines(&row_zeros, k);
    let drop_cols = worst_lines(&col_zeros, k);
    let keep_rows: Vec<usize> = (1..=host.rows()).filter(|i| !drop_rows.contains(i)).collect();
    let keep_cols: Vec<usize> = (1..=host.cols()).filter(|j| !drop_cols.contains(j)).collect();
    let reduced = host.submatrix(&keep_rows, &keep_cols)?;
    Ok(find_tight_occurrence(&reduced, p)?.map(|e| Embedding {
        row_map: e.row_map.iter().map(|&r| keep_rows[r - 1]).collect(),
        col_map: e.col_map.iter().map(|&c| keep_cols[c - 1]).collect(),
    }))
}

/// Parameters of the greedy analysis for `r`-repetition-free `k`-permutations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepfreeParams {
    pub k: u64,
    pub r: u64,
    /// `⌈(35/24)(k/r)^{1/3}⌉`, computed exactly.
    pub w: u64,
    /// `(1/3)(k/r)^{1/3}` as a float; its cube is exactly `k / (27 r)`.
    pub v: f64,
    /// `⌊v⌋`: zeros allowed per row and column of the `3k x 3k` host.
    pub line_zero_budget: u64,
    /// `⌊(k/3)(k/r)^{1/3}⌋`: zeros allowed in the whole `4k x 4k` host.
    pub total_zero_budget: u64,
}

/// Largest integer `x` with `num_coeff * x^3 <= rhs`.
fn cube_floor(num_coeff: u128, rhs: u128) -> u64 {
    let mut x = ((rhs as f64 / num_coeff as f64).cbrt()) as u128;
    while x > 0 && num_coeff * x * x * x > rhs {
        x -= 1;
    }
    while num_coeff * (x + 1) * (x + 1) * (x + 1) <= rhs {
        x += 1;
    }
    x as u64
}

pub fn repfree_params(k: u64, r: u64) -> Result<RepfreeParams> {
    if k < 9 || r < 3 {
        return domain(format!("greedy parameters need k >= 9 and r >= 3, got k = {k}, r = {r}"));
    }
    let (kk, rr) = (k as u128, r as u128);
    // w >= (35/24)(k/r)^{1/3}  <=>  (24 w)^3 r >= 35^3 k
    let mut w = cube_floor(24 * 24 * 24 * rr, 35 * 35 * 35 * kk) as u128;
    while 24 * 24 * 24 * w * w * w * rr < 35 * 35 * 35 * kk {
        w += 1;
    }
    let params = RepfreeParams {
        k,
        r,
        w: w as u64,
        v: (k as f64 / r as f64).cbrt() / 3.0,
        line_zero_budget: cube_floor(27 * rr, kk),
        // z <= (k/3)(k/r)^{1/3}  <=>  27 z^3 r <= k^4
        total_zero_budget: cube_floor(27 * rr, kk * kk * kk * kk),
    };
    if 3 * params.w > k {
        return Err(crate::Error::Internal(format!("w = {} exceeds k/3 for k = {k}, r = {r}", params.w)));
    }
    Ok(params)
}

/// A window where neither alternative of the per-step move count held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveWindowViolation {
    pub step: usize,
    pub movers_at_step: usize,
    pub window_moves: usize,
}

/// Checks, on the traces of all `2k+1` instances over a `3k x 3k` host,
/// that for every step `j <= 3k - w` either at least `3k/4` instances move
/// at step `j` or at least `3kw/4` moves happen in steps `j..j+w`.
///
/// Instances stop once one of them completes, so only windows that end
/// before the first completing step are checked. Returns the number of
/// windows checked.
pub fn check_move_windows(
    traces: &[InstanceTrace],
    k: usize,
    w: usize,
) -> std::result::Result<usize, MoveWindowViolation> {
    let first_found = traces
        .iter()
        .filter(|t| t.found())
        .map(|t| t.steps.len())
        .min()
        .unwrap_or(usize::MAX);
    let movers = |j: usize| traces.iter().filter(|t| t.moved_at(j)).count();
    let mut checked = 0;
    let last = (3 * k).saturating_sub(w);
    for j in 1..=last {
        if j + w > first_found {
            break;
        }
        let now = movers(j);
        let window: usize = (j..j + w).map(movers).sum();
        // 4 * now >= 3k  or  4 * window >= 3kw
        if 4 * now < 3 * k && 4 * window < 3 * k * w {
            return Err(MoveWindowViolation { step: j, movers_at_step: now, window_moves: window });
        }
        checked += 1;
    }
    Ok(checked)
}
