//! Distance-vector statistics of permutation matrices.
//!
//! The distance vector of one-entries `(i1, j1)` and `(i2, j2)` is
//! `(i2 - i1, j2 - j1)`. Vectors are canonicalized with a positive row
//! offset, so each unordered pair is counted exactly once; `(d, d')` and
//! `(-d, -d')` always occur equally often.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::constructions::random_permutation_with;
use crate::enumerate::{factorial, for_each_with_first};
use crate::error::{domain, invalid, Error, Result};
use crate::matrix::Permutation;
use crate::rng::SeededRng;

/// Largest `k` for which the exhaustive censuses run.
pub const CENSUS_LIMIT: usize = 8;

pub type DistanceVector = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistanceHistogram {
    pub counts: BTreeMap<DistanceVector, usize>,
}

impl DistanceHistogram {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn max_count(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn get(&self, v: DistanceVector) -> usize {
        self.counts.get(&v).copied().unwrap_or(0)
    }
}

pub fn distance_histogram(p: &Permutation) -> DistanceHistogram {
    DistanceHistogram { counts: histogram_of(p.images()) }
}

fn histogram_of(images: &[usize]) -> BTreeMap<DistanceVector, usize> {
    let mut counts = BTreeMap::new();
    for i1 in 0..images.len() {
        for i2 in i1 + 1..images.len() {
            let v = ((i2 - i1) as i64, images[i2] as i64 - images[i1] as i64);
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    counts
}

fn max_repetition_of(images: &[usize]) -> usize {
    // vectors are dense in a (k-1) x (2k-1) box
    let k = images.len();
    let width = 2 * k - 1;
    let mut counts = vec![0usize; k * width];
    let mut best = 0;
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            let d = i2 - i1;
            let dp = images[i2] + k - 1 - images[i1];
            let slot = &mut counts[d * width + dp];
            *slot += 1;
            best = best.max(*slot);
        }
    }
    best
}

/// The largest number of pairs sharing one distance vector.
pub fn max_repetition(p: &Permutation) -> Result<usize> {
    if p.size() < 2 {
        return invalid("max_repetition needs k >= 2: a 1-permutation has no pairs");
    }
    Ok(max_repetition_of(p.images()))
}

pub fn is_r_repetition_free(p: &Permutation, r: usize) -> Result<bool> {
    Ok(max_repetition(p)? < r)
}

/// The smallest integer `r0 >= 4 log2 k / log2 log2 k`.
pub fn scattered_threshold(k: usize) -> Result<usize> {
    if k <= 2 {
        return domain(format!("scatteredness undefined for k = {k}: log2 log2 k is nonpositive"));
    }
    let lg = (k as f64).log2();
    let theta = 4.0 * lg / lg.log2();
    let nearest = theta.round();
    if (theta - nearest).abs() < 1e-9 {
        Ok(nearest as usize)
    } else {
        Ok(theta.ceil() as usize)
    }
}

pub fn is_scattered(p: &Permutation) -> Result<bool> {
    let r0 = scattered_threshold(p.size())?;
    Ok(max_repetition_of(p.images()) < r0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub k: usize,
    pub r: usize,
    /// Number of `k`-permutations with an `r`-repetition.
    pub count: u128,
    /// `2 k^2 k! / r!`.
    pub bound: u128,
}

fn check_census_k(k: usize) -> Result<()> {
    if k > CENSUS_LIMIT {
        return Err(Error::SizeLimit(format!(
            "exhaustive census runs for k <= {CENSUS_LIMIT}; use the Monte Carlo estimate for k = {k}"
        )));
    }
    if k < 2 {
        return invalid("census needs k >= 2");
    }
    Ok(())
}

/// Histogram of `max_repetition` over all `k!` permutations, index = max count.
fn max_repetition_distribution(k: usize) -> Vec<u128> {
    (1..=k)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u128; k];
            for_each_with_first(k, first, |p| local[max_repetition_of(p)] += 1);
            local
        })
        .reduce(|| vec![0u128; k], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

/// Exact count of `k`-permutations having an `r`-repetition, for each `r` in `1..k`.
pub fn repetition_census(k: usize) -> Result<Vec<CensusRow>> {
    check_census_k(k)?;
    let dist = max_repetition_distribution(k);
    let kf = factorial(k);
    Ok((1..k)
        .map(|r| CensusRow {
            k,
            r,
            count: dist[r..].iter().sum(),
            bound: 2 * (k * k) as u128 * kf / factorial(r),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerVectorCensus {
    pub k: usize,
    pub r: usize,
    /// For each canonical vector, the number of permutations where it is `r`-repeated.
    pub counts: BTreeMap<DistanceVector, u128>,
    pub max: u128,
    /// The vector attaining `max`, smallest in `(d, d')` order.
    pub argmax: Option<DistanceVector>,
    /// `k! / r!`.
    pub bound: u128,
}

pub fn per_vector_census(k: usize, r: usize) -> Result<PerVectorCensus> {
    check_census_k(k)?;
    if r == 0 || r >= k {
        return invalid(format!("per-vector census needs 1 <= r <= k-1, got r = {r}, k = {k}"));
    }
    let counts = (1..=k)
        .into_par_iter()
        .map(|first| {
            let mut local: BTreeMap<DistanceVector, u128> = BTreeMap::new();
            for_each_with_first(k, first, |p| {
                for (v, c) in histogram_of(p) {
                    if c >= r {
                        *local.entry(v).or_insert(0) += 1;
                    }
                }
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (v, c) in b {
                *a.entry(v).or_insert(0) += c;
            }
            a
        });
    let mut max = 0;
    let mut argmax = None;
    for (&v, &c) in &counts {
        if c > max {
            max = c;
            argmax = Some(v);
        }
    }
    Ok(PerVectorCensus { k, r, counts, max, argmax, bound: factorial(k) / factorial(r) })
}

/// Exhaustive count of non-scattered `k`-permutations, with `k!`.
pub fn scattered_census(k: usize) -> Result<(u128, u128)> {
    check_census_k(k)?;
    let r0 = scattered_threshold(k)?;
    let dist = max_repetition_distribution(k);
    let failing = dist.iter().skip(r0).sum();
    Ok((failing, factorial(k)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub samples: usize,
    pub hits: usize,
    pub fraction: f64,
    pub std_error: f64,
}

impl McEstimate {
    pub(crate) fn from_hits(hits: usize, samples: usize) -> Self {
        let p = hits as f64 / samples as f64;
        McEstimate { samples, hits, fraction: p, std_error: (p * (1.0 - p) / samples as f64).sqrt() }
    }
}

/// Fraction of uniformly sampled `k`-permutations that are not scattered.
pub fn scattered_fraction_mc(k: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return invalid("Monte Carlo estimate needs at least one sample");
    }
    let r0 = scattered_threshold(k)?;
    let mut rng = SeededRng::new(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let p = random_permutation_with(k, &mut rng)?;
        if max_repetition_of(p.images()) >= r0 {
            hits += 1;
        }
    }
    Ok(McEstimate::from_hits(hits, samples))
}

/// Rejection-samples an `r`-repetition-free `k`-permutation.
pub fn random_repetition_free(k: usize, r: usize, rng: &mut SeededRng, max_attempts: usize) -> Result<Permutation> {
    if k < 2 {
        return invalid("repetition-free sampling needs k >= 2");
    }
    for _ in 0..max_attempts {
        let p = random_permutation_with(k, rng)?;
        if max_repetition_of(p.images()) < r {
            return Ok(p);
        }
    }
    Err(Error::Unavailable(format!("no {r}-repetition-free {k}-permutation within {max_attempts} attempts")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Symmetry;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn histogram_examples() {
        let h = distance_histogram(&Permutation::identity(3));
        assert_eq!(h.counts, BTreeMap::from([((1, 1), 2), ((2, 2), 1)]));
        let h = distance_histogram(&Permutation::reversal(3));
        assert_eq!(h.counts, BTreeMap::from([((1, -1), 2), ((2, -2), 1)]));
        for k in 2..10 {
            let h = distance_histogram(&Permutation::identity(k));
            assert_eq!(h.get((1, 1)), k - 1);
            assert_eq!(h.total(), k * (k - 1) / 2);
        }
    }

    #[test]
    fn max_repetition_examples() {
        assert_eq!(max_repetition(&Permutation::identity(9)).unwrap(), 8);
        assert_eq!(max_repetition(&perm(&[2, 1])).unwrap(), 1);
        assert_eq!(max_repetition(&perm(&[1, 2])).unwrap(), 1);
        // pairs: (1,2) (2,-1) (3,1) (1,-3) (2,-1) (1,2)
        assert_eq!(max_repetition(&perm(&[2, 4, 1, 3])).unwrap(), 2);
        assert!(max_repetition(&perm(&[1])).is_err());
    }

    #[test]
    fn scattered_threshold_values() {
        assert!(scattered_threshold(2).is_err());
        assert_eq!(scattered_threshold(3).unwrap(), 10);
        // 4 * 2 / 1 is an integer
        assert_eq!(scattered_threshold(4).unwrap(), 8);
        assert_eq!(scattered_threshold(9).unwrap(), 8);
        assert_eq!(scattered_threshold(16).unwrap(), 8);
        assert!(!is_scattered(&Permutation::identity(9)).unwrap());
        assert!(is_scattered(&Permutation::identity(8)).unwrap());
        for p in [[1, 2, 3], [3, 1, 2], [2, 1, 3]] {
            assert!(is_scattered(&perm(&p)).unwrap());
        }
    }

    #[test]
    fn census_small() {
        let rows = repetition_census(3).unwrap();
        assert_eq!(rows[0].count, 6);
        assert_eq!(rows[1].count, 2);
        let rows = repetition_census(5).unwrap();
        assert_eq!(rows[2].bound, 1000);
        assert!(rows[2].count <= 1000);
        assert!(matches!(repetition_census(9), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn per_vector_small() {
        let c = per_vector_census(4, 3).unwrap();
        assert_eq!(c.counts.get(&(1, 1)), Some(&1));
        assert_eq!(c.counts.get(&(1, -1)), Some(&1));
        assert_eq!(c.bound, 4);
        assert!(c.counts.keys().all(|&(d, dp)| d == 1 && dp.abs() == 1));
        let c = per_vector_census(3, 2).unwrap();
        assert!(c.max <= 3);
        assert!(per_vector_census(4, 4).is_err());
        assert!(per_vector_census(4, 0).is_err());
    }

    #[test]
    fn monte_carlo_contracts() {
        let one = scattered_fraction_mc(12, 1, 5).unwrap();
        assert!(one.fraction == 0.0 || one.fraction == 1.0);
        assert_eq!(scattered_fraction_mc(9, 500, 3).unwrap(), scattered_fraction_mc(9, 500, 3).unwrap());
        assert!(scattered_fraction_mc(2, 10, 1).is_err());
        assert!(scattered_fraction_mc(5, 0, 1).is_err());
    }

    #[test]
    fn dihedral_images_keep_max_repetition() {
        let p = perm(&[3, 6, 1, 5, 2, 4, 7]);
        let m = max_repetition(&p).unwrap();
        for s in Symmetry::ALL {
            assert_eq!(max_repetition(&p.symmetry(s)).unwrap(), m);
        }
    }
}
