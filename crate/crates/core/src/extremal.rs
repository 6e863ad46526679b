//! Exact desk-scale extremal functions.
//!
//! `ex(n, P)` and its interval-minor analogue `exm(n, B)` are computed by
//! branch and bound over the entries of an `n x n` matrix in column-major
//! order. The zero branch is explored before the one branch, so leaves are
//! met in increasing column-major lexicographic order and the first maximizer
//! reached is the lexicographically smallest one. A greedy maximal avoider
//! seeds the incumbent value.

use std::time::{Duration, Instant};

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::matrix::{contains, is_interval_minor, BinaryMatrix, Permutation, INTERVAL_MINOR_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    LowerBound,
    UpperBound,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::LowerBound => "lower_bound",
            Status::UpperBound => "upper_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub n: usize,
    pub value: u64,
    pub status: Status,
    /// An avoider with exactly `value` ones; present for exact and lower-bound results.
    pub witness: Option<BinaryMatrix>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl ExtremalResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// Node limit for the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);
}

impl Default for Budget {
    fn default() -> Self {
        Budget(50_000_000)
    }
}

struct Search<'a> {
    n: usize,
    cells: usize,
    avoids: &'a dyn Fn(&BinaryMatrix) -> bool,
    limit: u64,
    nodes: u64,
    best_value: usize,
    best: BinaryMatrix,
    // whether `best` came from the tree search rather than the greedy seed
    settled: bool,
    exhausted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, m: &mut BinaryMatrix, idx: usize, ones: usize) {
        if self.nodes >= self.limit {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let bound = ones + (self.cells - idx);
        if bound < self.best_value || (bound == self.best_value && self.settled) {
            return;
        }
        if idx == self.cells {
            self.best_value = ones;
            self.best = m.clone();
            self.settled = true;
            return;
        }
        let (r, c) = (idx % self.n, idx / self.n);
        self.dfs(m, idx + 1, ones);
        if self.exhausted {
            return;
        }
        m.put(r, c, true);
        if (self.avoids)(m) {
            self.dfs(m, idx + 1, ones + 1);
        }
        m.put(r, c, false);
    }
}

fn greedy_avoider(n: usize, avoids: &dyn Fn(&BinaryMatrix) -> bool) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(n, n).expect("n >= 1");
    for c in 0..n {
        for r in 0..n {
            m.put(r, c, true);
            if !avoids(&m) {
                m.put(r, c, false);
            }
        }
    }
    m
}

fn maximize(n: usize, avoids: &dyn Fn(&BinaryMatrix) -> bool, budget: Budget) -> ExtremalResult {
    let start = Instant::now();
    let seed = greedy_avoider(n, avoids);
    let mut search = Search {
        n,
        cells: n * n,
        avoids,
        limit: budget.0,
        nodes: 0,
        best_value: seed.count_ones(),
        best: seed,
        settled: false,
        exhausted: false,
    };
    let mut m = BinaryMatrix::zeros(n, n).expect("n >= 1");
    search.dfs(&mut m, 0, 0);
    ExtremalResult {
        n,
        value: search.best_value as u64,
        status: if search.exhausted { Status::LowerBound } else { Status::Exact },
        witness: Some(search.best),
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    }
}

fn trivially_full(n: usize, pattern: &BinaryMatrix) -> Option<ExtremalResult> {
    (pattern.rows() > n || pattern.cols() > n).then(|| ExtremalResult {
        n,
        value: (n * n) as u64,
        status: Status::Exact,
        witness: Some(BinaryMatrix::all_ones(n, n).expect("n >= 1")),
        nodes_explored: 0,
        elapsed: Duration::ZERO,
    })
}

/// `ex(n, P)`: the most ones in an `n x n` matrix avoiding `pattern`.
pub fn ex_exact(n: usize, pattern: &BinaryMatrix, budget: Budget) -> Result<ExtremalResult> {
    if n == 0 {
        return invalid("ex(n, P) needs n >= 1");
    }
    if let Some(r) = trivially_full(n, pattern) {
        return Ok(r);
    }
    if pattern.count_ones() == 0 {
        return invalid("a pattern without ones is contained in every matrix");
    }
    Ok(maximize(n, &|m| contains(m, pattern).is_none(), budget))
}

pub fn ex_exact_perm(n: usize, p: &Permutation, budget: Budget) -> Result<ExtremalResult> {
    ex_exact(n, &p.to_matrix(), budget)
}

/// `exm(n, B)`: the most ones in an `n x n` matrix without `pattern` as an interval minor.
pub fn exm_exact(n: usize, pattern: &BinaryMatrix, budget: Budget) -> Result<ExtremalResult> {
    if n == 0 {
        return invalid("exm(n, B) needs n >= 1");
    }
    if n > INTERVAL_MINOR_LIMIT {
        return Err(Error::SizeLimit(format!("exm is computed for n <= {INTERVAL_MINOR_LIMIT}, got {n}")));
    }
    if let Some(r) = trivially_full(n, pattern) {
        return Ok(r);
    }
    if pattern.count_ones() == 0 {
        return invalid("a pattern without ones is a minor of every matrix");
    }
    Ok(maximize(n, &|m| !is_interval_minor(pattern, m).expect("n within limit"), budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityStatus {
    Exact,
    LowerBound,
    /// Arbitrarily many lines fit: `y` ones can sit in fewer than `k` columns.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub value: Option<u64>,
    pub status: DensityStatus,
    pub witness: Option<BinaryMatrix>,
    pub nodes_explored: u64,
}

/// `f_P(z, y)`: most rows of a `P`-avoiding matrix with `z` columns and at
/// least `y` ones per row. With `transposed`, computes `g_P(z, y)`: most
/// columns of a `P`-avoiding matrix with `z` rows and at least `y` ones per
/// column, built by appending columns.
///
/// Lines carry exactly `y` ones: removing ones never creates an occurrence.
pub fn row_density_extremal(p: &Permutation, z: usize, y: usize, transposed: bool, budget: Budget) -> Result<DensityResult> {
    if z == 0 {
        return invalid("row density needs z >= 1");
    }
    if z > 63 {
        return Err(Error::SizeLimit(format!("row density search handles z <= 63, got {z}")));
    }
    if y > z {
        return Ok(DensityResult { value: Some(0), status: DensityStatus::Exact, witness: None, nodes_explored: 0 });
    }
    if y < p.size() {
        return Ok(DensityResult { value: None, status: DensityStatus::Unbounded, witness: None, nodes_explored: 0 });
    }
    let pattern = p.to_matrix();
    let lines: Vec<u64> = (0u64..(1 << z)).filter(|m| m.count_ones() as usize == y).collect();
    let mut state = LineSearch {
        z,
        transposed,
        pattern: &pattern,
        lines: &lines,
        limit: budget.0,
        nodes: 0,
        exhausted: false,
        best: Vec::new(),
    };
    let mut chosen = Vec::new();
    state.dfs(&mut chosen);
    let witness = (!state.best.is_empty()).then(|| state.build(&state.best));
    Ok(DensityResult {
        value: Some(state.best.len() as u64),
        status: if state.exhausted { DensityStatus::LowerBound } else { DensityStatus::Exact },
        witness,
        nodes_explored: state.nodes,
    })
}

struct LineSearch<'a> {
    z: usize,
    transposed: bool,
    pattern: &'a BinaryMatrix,
    lines: &'a [u64],
    limit: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<u64>,
}

impl LineSearch<'_> {
    fn build(&self, chosen: &[u64]) -> BinaryMatrix {
        let count = chosen.len();
        let mut ones = Vec::new();
        for (a, &mask) in chosen.iter().enumerate() {
            for b in 0..self.z {
                if mask >> b & 1 == 1 {
                    ones.push(if self.transposed { (b + 1, a + 1) } else { (a + 1, b + 1) });
                }
            }
        }
        let (rows, cols) = if self.transposed { (self.z, count) } else { (count, self.z) };
        BinaryMatrix::from_ones(rows, cols, ones).expect("positions in range")
    }

    fn dfs(&mut self, chosen: &mut Vec<u64>) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for &line in self.lines {
            if self.nodes >= self.limit {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            chosen.push(line);
            if contains(&self.build(chosen), self.pattern).is_none() {
                self.dfs(chosen);
            }
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhEstimate {
    /// `max ex(n, P) / n` over the exact values obtained.
    pub ratio: Ratio<u64>,
    /// The `n` attaining the ratio.
    pub argmax: usize,
    pub results: Vec<ExtremalResult>,
}

/// Certified lower bound on the Füredi–Hajnal limit from superadditivity:
/// `c_P >= ex(n, P) / n` for every exactly computed `n <= nmax`.
pub fn fh_lower_estimate(p: &Permutation, nmax: usize, budget: Budget) -> Result<FhEstimate> {
    if nmax == 0 {
        return invalid("nmax must be at least 1");
    }
    let pattern = p.to_matrix();
    let mut results = Vec::with_capacity(nmax);
    let mut best: Option<(Ratio<u64>, usize)> = None;
    for n in 1..=nmax {
        let r = ex_exact(n, &pattern, budget)?;
        if r.is_exact() {
            let ratio = Ratio::new(r.value, n as u64);
            if best.is_none_or(|(b, _)| ratio > b) {
                best = Some((ratio, n));
            }
        }
        results.push(r);
    }
    let (ratio, argmax) =
        best.ok_or_else(|| Error::Unavailable(format!("no exact ex(n, P) for n <= {nmax} within budget")))?;
    Ok(FhEstimate { ratio, argmax, results })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkQ {
    pub u: usize,
    pub ex_value: u64,
    /// `(ex(u, P) + 1) / u^2`.
    pub q: Ratio<u64>,
    /// `q >= 1`: the density hypothesis cannot hold.
    pub vacuous: bool,
}

/// Smallest `q` with `ex(u, P) < q u^2` for the exactly computed `ex(u, P)`.
pub fn framework_q(p: &Permutation, u: usize, budget: Budget) -> Result<FrameworkQ> {
    if u < 2 {
        return invalid("framework_q needs u >= 2");
    }
    let r = ex_exact(u, &p.to_matrix(), budget)?;
    if !r.is_exact() {
        return Err(Error::Unavailable(format!("ex({u}, P) not settled within {} nodes", r.nodes_explored)));
    }
    let q = Ratio::new(r.value + 1, (u * u) as u64);
    Ok(FrameworkQ { u, ex_value: r.value, q, vacuous: q >= Ratio::from_integer(1) })
}
