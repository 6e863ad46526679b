//! Plain brute-force oracles shared by the integration tests. Nothing here
//! calls into the search code of the library; only matrix accessors are used.

#![allow(dead_code)]

use pavoid_core::BinaryMatrix;

pub type Grid = Vec<Vec<bool>>;

pub fn grid(m: &BinaryMatrix) -> Grid {
    (1..=m.rows()).map(|i| (1..=m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

/// Calls `f` on every increasing `k`-subset of `0..n` until it returns true.
pub fn any_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if rec(n, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    k <= n && rec(n, k, 0, &mut Vec::with_capacity(k), f)
}

/// Containment by trying every row subset against every column subset.
pub fn contains_by_subsets(host: &Grid, pattern: &Grid) -> bool {
    let (hr, hc) = (host.len(), host[0].len());
    let (pr, pc) = (pattern.len(), pattern[0].len());
    any_subset(hr, pr, &mut |rows| {
        any_subset(hc, pc, &mut |cols| {
            (0..pr).all(|i| (0..pc).all(|j| !pattern[i][j] || host[rows[i]][cols[j]]))
        })
    })
}

/// Containment by trying every row subset; with the rows fixed, taking the
/// leftmost feasible host column for each pattern column in turn is optimal.
pub fn contains_by_rows(host: &Grid, pattern: &Grid) -> bool {
    let (hr, hc) = (host.len(), host[0].len());
    let (pr, pc) = (pattern.len(), pattern[0].len());
    any_subset(hr, pr, &mut |rows| {
        let mut c = 0;
        for j in 0..pc {
            while c < hc && !(0..pr).all(|i| !pattern[i][j] || host[rows[i]][c]) {
                c += 1;
            }
            if c == hc {
                return false;
            }
            c += 1;
        }
        true
    })
}

/// `ex(n, P)` by walking all `2^(n^2)` matrices, skipping those that cannot beat the current best.
pub fn ex_by_enumeration(n: usize, pattern: &Grid) -> u64 {
    let cells = n * n;
    let mut best = 0u32;
    for mask in 0u64..1 << cells {
        let ones = mask.count_ones();
        if ones <= best {
            continue;
        }
        let host: Grid = (0..n).map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect()).collect();
        if !contains_by_subsets(&host, pattern) {
            best = ones;
        }
    }
    best as u64
}

/// Next permutation in lexicographic order, false after the last one.
pub fn next_perm(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn all_perms(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (1..=k).collect();
    let mut out = vec![p.clone()];
    while next_perm(&mut p) {
        out.push(p.clone());
    }
    out
}

pub fn perm_grid(images: &[usize]) -> Grid {
    let k = images.len();
    (0..k).map(|i| (0..k).map(|j| images[i] == j + 1).collect()).collect()
}

/// Whether `seq` has a subsequence order-isomorphic to `pattern`.
pub fn seq_contains(seq: &[usize], pattern: &[usize]) -> bool {
    let k = pattern.len();
    any_subset(seq.len(), k, &mut |pos| {
        (0..k).all(|a| (a + 1..k).all(|b| (seq[pos[a]] < seq[pos[b]]) == (pattern[a] < pattern[b])))
    })
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Multiplicity of each distance vector `(j - i, p(j) - p(i))` over pairs `i < j`.
pub fn distance_counts(p: &[usize]) -> std::collections::HashMap<(i64, i64), usize> {
    let mut h = std::collections::HashMap::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            *h.entry(((j - i) as i64, p[j] as i64 - p[i] as i64)).or_insert(0) += 1;
        }
    }
    h
}

/// Longest chain of points strictly increasing in every coordinate.
pub fn longest_chain(points: &[Vec<usize>]) -> usize {
    let mut pts = points.to_vec();
    pts.sort();
    let mut best = vec![1usize; pts.len()];
    for b in 0..pts.len() {
        for a in 0..b {
            if pts[a].iter().zip(&pts[b]).all(|(x, y)| x < y) {
                best[b] = best[b].max(best[a] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
