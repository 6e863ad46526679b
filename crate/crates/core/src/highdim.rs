//! d-dimensional permutation matrices.
//!
//! A d-dimensional `n`-permutation is kept as its `n` points sorted by the
//! first coordinate, so it is determined by the permutations read off the
//! remaining `d - 1` axes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::enumerate::{factorial, next_permutation};
use crate::error::{invalid, Error, Result};
use crate::repetition::McEstimate;
use crate::rng::SeededRng;

/// Largest `(n!)^(d-1)` accepted by the pruned avoider count.
pub const COUNT_LIMIT: u128 = 1_000_000_000;
/// Largest `n^d` accepted by the all-matrices count.
pub const ALL_CELLS_LIMIT: usize = 20;
/// Largest `(n!)^(d-1)` accepted by the exact antichain enumeration.
pub const ANTICHAIN_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DDimPermutation {
    d: usize,
    // n points of d coordinates each, row-major, sorted by the first coordinate
    coords: Vec<usize>,
}

impl DDimPermutation {
    /// Points are 1-based; they may come in any order.
    pub fn new(d: usize, points: Vec<Vec<usize>>) -> Result<Self> {
        if d < 2 {
            return invalid(format!("dimension must be at least 2, got {d}"));
        }
        let n = points.len();
        if n == 0 {
            return invalid("a d-dimensional permutation needs at least one point");
        }
        for a in 0..d {
            let mut seen = vec![false; n + 1];
            for p in &points {
                if p.len() != d {
                    return invalid(format!("point {p:?} does not have {d} coordinates"));
                }
                let c = p[a];
                if c == 0 || c > n || seen[c] {
                    return invalid(format!("axis {} coordinates do not form a permutation of [{n}]", a + 1));
                }
                seen[c] = true;
            }
        }
        let mut points = points;
        points.sort();
        Ok(DDimPermutation { d, coords: points.concat() })
    }

    /// Points `(i, p_2(i), ..., p_d(i))` from the permutations of axes `2..=d`.
    pub fn from_axes(axes: &[Vec<usize>]) -> Result<Self> {
        let n = axes.first().map_or(0, Vec::len);
        let points = (0..n)
            .map(|i| {
                let mut p = vec![i + 1];
                p.extend(axes.iter().map(|ax| ax.get(i).copied().unwrap_or(0)));
                p
            })
            .collect();
        DDimPermutation::new(axes.len() + 1, points)
    }

    /// `I^d_n`: the points `(i, ..., i)`.
    pub fn identity(d: usize, n: usize) -> Result<Self> {
        DDimPermutation::new(d, (1..=n).map(|i| vec![i; d]).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn point(&self, i: usize) -> &[usize] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> Vec<Vec<usize>> {
        self.coords.chunks(self.d).map(<[usize]>::to_vec).collect()
    }

    /// Each axis increasing or decreasing along the first.
    pub fn is_monotone(&self) -> bool {
        let n = self.size();
        (1..self.d).all(|a| {
            let inc = (1..n).all(|i| self.point(i - 1)[a] < self.point(i)[a]);
            let dec = (1..n).all(|i| self.point(i - 1)[a] > self.point(i)[a]);
            inc || dec
        })
    }

    /// Points at the given 1-based positions (in first-coordinate order), relabeled.
    pub fn restriction(&self, positions: &[usize]) -> Result<Self> {
        let n = self.size();
        if positions.is_empty() || positions.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("positions must be nonempty and strictly increasing");
        }
        if positions[0] == 0 || positions[positions.len() - 1] > n {
            return invalid(format!("positions must lie in [{n}]"));
        }
        let chosen: Vec<&[usize]> = positions.iter().map(|&p| self.point(p - 1)).collect();
        let points = chosen
            .iter()
            .map(|p| (0..self.d).map(|a| 1 + chosen.iter().filter(|q| q[a] < p[a]).count()).collect())
            .collect();
        DDimPermutation::new(self.d, points)
    }

    pub fn to_matrix(&self) -> DDimBinaryMatrix {
        DDimBinaryMatrix { d: self.d, sizes: vec![self.size(); self.d], coords: self.coords.clone() }
    }
}

impl fmt::Display for DDimPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.d, self.size())?;
        for p in self.coords.chunks(self.d) {
            let line: Vec<String> = p.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DDimBinaryMatrix {
    d: usize,
    sizes: Vec<usize>,
    // sorted, distinct 1-positions, row-major
    coords: Vec<usize>,
}

impl DDimBinaryMatrix {
    pub fn new(sizes: Vec<usize>, ones: Vec<Vec<usize>>) -> Result<Self> {
        let d = sizes.len();
        if d < 2 {
            return invalid(format!("dimension must be at least 2, got {d}"));
        }
        if sizes.contains(&0) {
            return invalid("every size must be at least 1");
        }
        for p in &ones {
            if p.len() != d || p.iter().zip(&sizes).any(|(&c, &s)| c == 0 || c > s) {
                return invalid(format!("position {p:?} is outside {sizes:?}"));
            }
        }
        let mut ones = ones;
        ones.sort();
        if ones.windows(2).any(|w| w[0] == w[1]) {
            return invalid("duplicate 1-position");
        }
        Ok(DDimBinaryMatrix { d, sizes, coords: ones.concat() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn count_ones(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn ones(&self) -> Vec<Vec<usize>> {
        self.coords.chunks(self.d).map(<[usize]>::to_vec).collect()
    }
}

// points stored row-major with stride d
struct Pts<'a> {
    d: usize,
    data: &'a [usize],
}

impl Pts<'_> {
    fn at(&self, i: usize, a: usize) -> usize {
        self.data[i * self.d + a]
    }

    fn len(&self) -> usize {
        self.data.len() / self.d
    }
}

// whether host points h, g sit in the same relative position as pattern points p, q on every axis
fn agrees(host: &Pts, h: usize, g: usize, pat: &Pts, p: usize, q: usize) -> bool {
    (0..host.d).all(|a| {
        let (x, y) = (host.at(h, a), host.at(g, a));
        if pat.at(p, a) < pat.at(q, a) {
            x < y
        } else {
            x > y
        }
    })
}

/// Finds host indices for pattern points `chosen.len()..`, optionally forcing the
/// last pattern point onto host index `last` (all others then come before it).
fn occurrence(host: &Pts, pat: &Pts, chosen: &mut Vec<usize>, start: usize, last: Option<usize>) -> bool {
    let k = pat.len();
    let j = chosen.len();
    let end = match last {
        Some(_) if j == k - 1 => return true,
        Some(m) => m,
        None if j == k => return true,
        None => host.len(),
    };
    let need = k - j - usize::from(last.is_some());
    if end < need {
        return false;
    }
    for h in start..=end - need {
        if let Some(m) = last {
            if !agrees(host, h, m, pat, j, k - 1) {
                continue;
            }
        }
        if !chosen.iter().enumerate().all(|(t, &g)| agrees(host, g, h, pat, t, j)) {
            continue;
        }
        chosen.push(h);
        if occurrence(host, pat, chosen, h + 1, last) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Host 1-positions forming an occurrence of `pattern`, in the pattern's point order.
pub fn find_dd(host: &DDimBinaryMatrix, pattern: &DDimPermutation) -> Result<Option<Vec<Vec<usize>>>> {
    if host.d != pattern.d {
        return invalid(format!("dimension mismatch: host has d = {}, pattern d = {}", host.d, pattern.d));
    }
    let h = Pts { d: host.d, data: &host.coords };
    let p = Pts { d: pattern.d, data: &pattern.coords };
    let mut chosen = Vec::with_capacity(p.len());
    if occurrence(&h, &p, &mut chosen, 0, None) {
        Ok(Some(chosen.iter().map(|&i| host.coords[i * host.d..(i + 1) * host.d].to_vec()).collect()))
    } else {
        Ok(None)
    }
}

pub fn contains_dd(host: &DDimBinaryMatrix, pattern: &DDimPermutation) -> Result<bool> {
    Ok(find_dd(host, pattern)?.is_some())
}

fn tuple_count(n: usize, d: usize) -> Option<u128> {
    factorial(n).checked_pow(d as u32 - 1)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<usize> = (1..=n).collect();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

// mixed-radix decoding of `idx` into `slots` indices below `base`
fn decode(mut idx: usize, base: usize, slots: usize) -> Vec<usize> {
    let mut out = vec![0; slots];
    for s in out.iter_mut().rev() {
        *s = idx % base;
        idx /= base;
    }
    out
}

struct LastAxis<'a> {
    d: usize,
    n: usize,
    fixed: Vec<&'a [usize]>,
    pattern: Pts<'a>,
    buf: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
}

impl LastAxis<'_> {
    fn count(&mut self, m: usize) -> u128 {
        if m == self.n {
            return 1;
        }
        let mut total = 0;
        for v in 1..=self.n {
            if self.used[v] {
                continue;
            }
            self.buf.push(m + 1);
            for ax in &self.fixed {
                self.buf.push(ax[m]);
            }
            self.buf.push(v);
            let host = Pts { d: self.d, data: &self.buf };
            self.chosen.clear();
            let hit = m + 1 >= self.pattern.len() && occurrence(&host, &self.pattern, &mut self.chosen, 0, Some(m));
            if !hit {
                self.used[v] = true;
                total += self.count(m + 1);
                self.used[v] = false;
            }
            self.buf.truncate(m * self.d);
        }
        total
    }
}

/// `|S_P(n)|` for a d-dimensional pattern: d-dimensional `n`-permutations avoiding `P`.
///
/// Axes `2..d` range over all permutations; the last axis is grown value by
/// value with pruning. `d = 3, n = 7` is the practical ceiling.
pub fn count_avoiders_dd(p: &DDimPermutation, n: usize) -> Result<BigUint> {
    if n == 0 {
        return invalid("count needs n >= 1");
    }
    let d = p.d;
    let total = tuple_count(n, d)
        .filter(|&t| t <= COUNT_LIMIT)
        .ok_or_else(|| Error::SizeLimit(format!("(n!)^(d-1) exceeds {COUNT_LIMIT} for d = {d}, n = {n}")))?;
    if p.size() > n {
        return Ok(BigUint::from(total));
    }
    let perms = all_permutations(n);
    let outer = perms.len().pow(d as u32 - 2);
    let count: u128 = (0..outer)
        .into_par_iter()
        .map(|idx| {
            let fixed = decode(idx, perms.len(), d - 2).into_iter().map(|i| perms[i].as_slice()).collect();
            let mut walk = LastAxis {
                d,
                n,
                fixed,
                pattern: Pts { d, data: &p.coords },
                buf: Vec::with_capacity(n * d),
                used: vec![false; n + 1],
                chosen: Vec::new(),
            };
            walk.count(0)
        })
        .sum();
    Ok(BigUint::from(count))
}

/// `|T_P(n)|`: all d-dimensional `n x ... x n` binary matrices avoiding `P`.
pub fn count_all_avoiders_dd(p: &DDimPermutation, n: usize) -> Result<BigUint> {
    if n == 0 {
        return invalid("count needs n >= 1");
    }
    let d = p.d;
    let cells = (n as u128).checked_pow(d as u32).filter(|&c| c <= ALL_CELLS_LIMIT as u128).ok_or_else(|| {
        Error::SizeLimit(format!("n^d exceeds {ALL_CELLS_LIMIT} cells for d = {d}, n = {n}"))
    })? as usize;
    // cell index in mixed radix n, first axis most significant, so cells come in lexicographic order
    let cell_coords: Vec<usize> = (0..cells).flat_map(|c| decode(c, n, d).into_iter().map(|x| x + 1)).collect();
    let pattern = Pts { d, data: &p.coords };
    let count: u64 = (0u64..1 << cells)
        .into_par_iter()
        .map(|mask| {
            let data: Vec<usize> = (0..cells)
                .filter(|&c| mask >> c & 1 == 1)
                .flat_map(|c| cell_coords[c * d..(c + 1) * d].iter().copied())
                .collect();
            let host = Pts { d, data: &data };
            u64::from(!occurrence(&host, &pattern, &mut Vec::new(), 0, None))
        })
        .sum();
    Ok(BigUint::from(count))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntichainMode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum AntichainProbability {
    Exact(BigRational),
    MonteCarlo(McEstimate),
}

// no i < j with every axis increasing from i to j
fn is_antichain(axes: &[&[usize]], n: usize) -> bool {
    (0..n).all(|i| (i + 1..n).all(|j| !axes.iter().all(|ax| ax[i] < ax[j])))
}

/// `Q_d(n)`: probability that `d` independent uniform linear orders on `[n]`
/// intersect to an antichain. The first order is fixed as the identity.
pub fn antichain_probability(d: usize, n: usize, mode: AntichainMode) -> Result<AntichainProbability> {
    if d < 2 || n == 0 {
        return invalid("antichain probability needs d >= 2 and n >= 1");
    }
    match mode {
        AntichainMode::Exact => {
            let total = tuple_count(n, d).filter(|&t| t <= ANTICHAIN_LIMIT).ok_or_else(|| {
                Error::SizeLimit(format!("(n!)^(d-1) exceeds {ANTICHAIN_LIMIT} for d = {d}, n = {n}"))
            })?;
            let perms = all_permutations(n);
            let outer = perms.len().pow(d as u32 - 2);
            let hits: u128 = (0..outer)
                .into_par_iter()
                .map(|idx| {
                    let mut axes: Vec<&[usize]> =
                        decode(idx, perms.len(), d - 2).into_iter().map(|i| perms[i].as_slice()).collect();
                    axes.push(&[]);
                    let mut hits = 0u128;
                    for last in &perms {
                        axes[d - 2] = last;
                        hits += u128::from(is_antichain(&axes, n));
                    }
                    hits
                })
                .sum();
            Ok(AntichainProbability::Exact(BigRational::new(BigInt::from(hits), BigInt::from(total))))
        }
        AntichainMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return invalid("Monte Carlo estimate needs at least one sample");
            }
            let mut rng = SeededRng::new(seed);
            let mut axes: Vec<Vec<usize>> = vec![(1..=n).collect(); d - 1];
            let mut hits = 0;
            for _ in 0..samples {
                for ax in axes.iter_mut() {
                    ax.shuffle(&mut rng);
                }
                let views: Vec<&[usize]> = axes.iter().map(Vec::as_slice).collect();
                hits += usize::from(is_antichain(&views, n));
            }
            Ok(AntichainProbability::MonteCarlo(McEstimate::from_hits(hits, samples)))
        }
    }
}

// lexicographically smallest longest subsequence of `vals` that is increasing (or decreasing)
fn longest_monotone(vals: &[usize], increasing: bool) -> Vec<usize> {
    let m = vals.len();
    let before = |a: usize, b: usize| if increasing { vals[a] < vals[b] } else { vals[a] > vals[b] };
    // best[i]: longest such subsequence starting at i
    let mut best = vec![1usize; m];
    for i in (0..m).rev() {
        for j in i + 1..m {
            if before(i, j) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    let len = best.iter().copied().max().unwrap_or(0);
    let mut out = Vec::with_capacity(len);
    let mut need = len;
    let mut from = 0;
    while need > 0 {
        let i = (from..m)
            .find(|&i| best[i] == need && out.last().is_none_or(|&p| before(p, i)))
            .expect("a continuation exists");
        out.push(i);
        need -= 1;
        from = i + 1;
    }
    out
}

/// Monotone subpattern found by taking a longest monotone subsequence along
/// each of the axes `2..=d` in turn. Its size is at least `ceil(k^(1/2^(d-1)))`.
/// Positions are 1-based in first-coordinate order.
pub fn monotone_subpattern(p: &DDimPermutation) -> (DDimPermutation, Vec<usize>) {
    let mut keep: Vec<usize> = (0..p.size()).collect();
    for a in 1..p.d {
        let vals: Vec<usize> = keep.iter().map(|&i| p.point(i)[a]).collect();
        let inc = longest_monotone(&vals, true);
        let dec = longest_monotone(&vals, false);
        let pick = if dec.len() > inc.len() { dec } else { inc };
        keep = pick.into_iter().map(|i| keep[i]).collect();
    }
    let positions: Vec<usize> = keep.iter().map(|&i| i + 1).collect();
    let sub = p.restriction(&positions).expect("positions are valid");
    (sub, positions)
}

/// Smallest `s` with `s^(2^(d-1)) >= k`.
pub fn monotone_guarantee(k: usize, d: usize) -> usize {
    let e = 1u32 << (d - 1);
    (1..=k).find(|&s| (s as u128).checked_pow(e).is_none_or(|v| v >= k as u128)).unwrap_or(1)
}

/// Merges `l` parts avoiding `I^d_2` into an `lm`-permutation avoiding `I^d_(l+1)`.
///
/// `interleavings[a]` has length `lm` and labels each slot of axis `a + 1`
/// with the part (1-based) owning it; every part owns exactly `m` slots.
/// A point of part `p` with coordinate `c` on an axis moves to the slot
/// holding the `c`-th occurrence of `p` there.
pub fn merge_avoiders(parts: &[DDimPermutation], interleavings: &[Vec<usize>]) -> Result<DDimPermutation> {
    let l = parts.len();
    if l == 0 {
        return invalid("merge needs at least one part");
    }
    let d = parts[0].d;
    let m = parts[0].size();
    let pair = DDimPermutation::identity(d, 2)?;
    for (i, part) in parts.iter().enumerate() {
        if part.d != d || part.size() != m {
            return invalid(format!("part {} is not a {d}-dimensional {m}-permutation", i + 1));
        }
        if m >= 2 && contains_dd(&part.to_matrix(), &pair)? {
            return invalid(format!("part {} contains I^{d}_2", i + 1));
        }
    }
    if interleavings.len() != d {
        return invalid(format!("expected {d} interleavings, got {}", interleavings.len()));
    }
    // slot[a][p][c - 1]: slot of the c-th occurrence of part p on axis a
    let mut slot = vec![vec![Vec::with_capacity(m); l]; d];
    for (a, inter) in interleavings.iter().enumerate() {
        if inter.len() != l * m {
            return invalid(format!("interleaving {} has length {}, expected {}", a + 1, inter.len(), l * m));
        }
        for (s, &owner) in inter.iter().enumerate() {
            if owner == 0 || owner > l {
                return invalid(format!("interleaving {} names part {owner}, expected 1..={l}", a + 1));
            }
            slot[a][owner - 1].push(s + 1);
        }
        if slot[a].iter().any(|v| v.len() != m) {
            return invalid(format!("interleaving {} does not give every part exactly {m} slots", a + 1));
        }
    }
    let points = parts
        .iter()
        .enumerate()
        .flat_map(|(pi, part)| {
            let slot = &slot;
            (0..m).map(move |i| (0..d).map(|a| slot[a][pi][part.point(i)[a] - 1]).collect())
        })
        .collect();
    let merged = DDimPermutation::new(d, points)?;
    if contains_dd(&merged.to_matrix(), &DDimPermutation::identity(d, l + 1)?)? {
        return Err(Error::Internal(format!("merged matrix contains I^{d}_{}", l + 1)));
    }
    Ok(merged)
}

/// Uniformly random labels: each of `l` parts appears `m` times.
pub fn random_interleaving(l: usize, m: usize, rng: &mut SeededRng) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=l).flat_map(|p| std::iter::repeat_n(p, m)).collect();
    v.shuffle(rng);
    v
}

/// Rejection-samples a d-dimensional `m`-permutation avoiding `I^d_2`.
pub fn random_antichain_part(d: usize, m: usize, rng: &mut SeededRng, max_attempts: usize) -> Result<DDimPermutation> {
    if d < 2 || m == 0 {
        return invalid("need d >= 2 and m >= 1");
    }
    let mut axes: Vec<Vec<usize>> = vec![(1..=m).collect(); d - 1];
    for _ in 0..max_attempts {
        for ax in axes.iter_mut() {
            ax.shuffle(rng);
        }
        let views: Vec<&[usize]> = axes.iter().map(Vec::as_slice).collect();
        if is_antichain(&views, m) {
            return DDimPermutation::from_axes(&axes);
        }
    }
    Err(Error::Unavailable(format!("no I^{d}_2-avoiding {m}-permutation within {max_attempts} attempts")))
}
