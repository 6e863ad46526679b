//! Brute-force reference implementations.
//!
//! Each function here answers the same question as an optimized routine
//! elsewhere in the crate by plain enumeration. They are slow on purpose and
//! only meant for small inputs.

use rayon::prelude::*;

use crate::enumerate::next_permutation;
use crate::matrix::{contract, for_each_cut_set, BinaryMatrix, IntervalDecomposition, Permutation};

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..=n - (k - cur.len()) + 1 {
            cur.push(i);
            if rec(n, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if k > n {
        return false;
    }
    rec(n, k, 1, &mut Vec::with_capacity(k), f)
}

/// Containment by trying every row subset against every column subset.
pub fn contains_exhaustive(host: &BinaryMatrix, pattern: &BinaryMatrix) -> bool {
    let (k, l) = (pattern.rows(), pattern.cols());
    let ones = pattern.ones();
    subsets(host.rows(), k, &mut |rows| {
        let rows = rows.to_vec();
        subsets(host.cols(), l, &mut |cols| ones.iter().all(|&(i, j)| host.get(rows[i - 1], cols[j - 1])))
    })
}

/// Interval minor by trying every pair of row and column decompositions.
pub fn interval_minor_exhaustive(pattern: &BinaryMatrix, host: &BinaryMatrix) -> bool {
    let (k, l) = (pattern.rows(), pattern.cols());
    if k > host.rows() || l > host.cols() {
        return false;
    }
    let mut found = false;
    for_each_cut_set(host.rows(), k, |rc| {
        let rd = IntervalDecomposition::from_cuts(host.rows(), rc).expect("valid cuts");
        for_each_cut_set(host.cols(), l, |cc| {
            let cd = IntervalDecomposition::from_cuts(host.cols(), cc).expect("valid cuts");
            found = contract(host, &rd, &cd).expect("matching decomposition").dominates(pattern);
            found
        });
        found
    });
    found
}

fn matrix_from_mask(n: usize, mask: u64) -> BinaryMatrix {
    let bits: Vec<bool> = (0..n * n).map(|i| mask >> i & 1 == 1).collect();
    BinaryMatrix::from_bits(n, n, &bits).expect("n >= 1")
}

/// `ex(n, P)` over all `2^(n^2)` matrices, using `avoids` as the predicate.
pub fn max_avoider_exhaustive(n: usize, avoids: impl Fn(&BinaryMatrix) -> bool + Sync) -> u64 {
    assert!(n * n <= 25, "exhaustive search is limited to n <= 5");
    (0u64..1 << (n * n))
        .into_par_iter()
        .filter(|mask| {
            let m = matrix_from_mask(n, *mask);
            avoids(&m)
        })
        .map(|mask| mask.count_ones() as u64)
        .max()
        .unwrap_or(0)
}

pub fn ex_exhaustive(n: usize, pattern: &BinaryMatrix) -> u64 {
    max_avoider_exhaustive(n, |m| !contains_exhaustive(m, pattern))
}

pub fn exm_exhaustive(n: usize, pattern: &BinaryMatrix) -> u64 {
    max_avoider_exhaustive(n, |m| !interval_minor_exhaustive(pattern, m))
}

fn order_isomorphic(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// Whether the sequence `seq` has a subsequence order-isomorphic to `pattern`.
pub fn sequence_contains(seq: &[usize], pattern: &[usize]) -> bool {
    let mut sub = Vec::with_capacity(pattern.len());
    subsets(seq.len(), pattern.len(), &mut |pos| {
        sub.clear();
        sub.extend(pos.iter().map(|&p| seq[p - 1]));
        order_isomorphic(&sub, pattern)
    })
}

/// `|S_P(n)|` by testing all `n!` permutations.
pub fn count_avoiders_enumerate(pi: &Permutation, n: usize) -> u128 {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut count = 0;
    loop {
        if !sequence_contains(&perm, pi.images()) {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            return count;
        }
    }
}

/// All permutations of `[k]` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut perm: Vec<usize> = (1..=k).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_vec_unchecked(perm.clone()));
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_sanity() {
        let i2 = Permutation::identity(2).to_matrix();
        assert!(contains_exhaustive(&BinaryMatrix::all_ones(2, 2).unwrap(), &i2));
        assert!(!contains_exhaustive(&Permutation::reversal(3).to_matrix(), &i2));
        assert_eq!(ex_exhaustive(2, &i2), 3);
        assert_eq!(count_avoiders_enumerate(&Permutation::new(vec![1, 2, 3]).unwrap(), 4), 14);
        assert_eq!(all_permutations(4).len(), 24);
        let j2 = BinaryMatrix::all_ones(2, 2).unwrap();
        let corners = BinaryMatrix::from_ones(4, 4, [(1, 1), (1, 4), (4, 1), (4, 4)]).unwrap();
        assert!(interval_minor_exhaustive(&j2, &corners));
        assert!(!interval_minor_exhaustive(&j2, &i2));
    }
}
