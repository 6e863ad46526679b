//! Lexicographic permutation enumeration shared by the exhaustive censuses.

/// Rearranges `v` into its lexicographic successor; returns `false` (leaving
/// `v` sorted ascending) after the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visits every permutation of `[k]` whose first image is `first`, in
/// lexicographic order. Splitting on the first image gives independent
/// blocks for parallel censuses.
pub(crate) fn for_each_with_first(k: usize, first: usize, mut f: impl FnMut(&[usize])) {
    let mut perm = Vec::with_capacity(k);
    perm.push(first);
    perm.extend((1..=k).filter(|&v| v != first));
    loop {
        f(&perm);
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
