//! Named matrix families and the composition operations used to build
//! structured permutations.

use rand::seq::SliceRandom;

use crate::error::{invalid, Result};
use crate::matrix::{BinaryMatrix, Permutation};
use crate::rng::SeededRng;

/// Named matrix families with their size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    Identity(usize),
    /// Ones on the antidiagonal `i + j = k + 1`.
    Reversal(usize),
    /// Odd `k`: `π(i) = i` for odd `i`, `π(i) = k + 1 - i` for even `i`.
    Cross(usize),
    /// Square `k`: ones at `(a + b√k + 1, b + a√k + 1)`.
    FoxGrid(usize),
    /// Even `k`: ones on both diagonals.
    XMatrix(usize),
    AllOnes(usize, usize),
}

impl NamedFamily {
    pub fn parse(kind: &str, sizes: &[usize]) -> Result<NamedFamily> {
        let one = |name: &str| match sizes {
            [k] => Ok(*k),
            _ => invalid(format!("{name} takes exactly one size parameter")),
        };
        match kind {
            "identity" => Ok(NamedFamily::Identity(one(kind)?)),
            "reversal" => Ok(NamedFamily::Reversal(one(kind)?)),
            "cross" => Ok(NamedFamily::Cross(one(kind)?)),
            "fox_grid" => Ok(NamedFamily::FoxGrid(one(kind)?)),
            "x_matrix" => Ok(NamedFamily::XMatrix(one(kind)?)),
            "all_ones" => match sizes {
                [r, k] => Ok(NamedFamily::AllOnes(*r, *k)),
                [k] => Ok(NamedFamily::AllOnes(*k, *k)),
                _ => invalid("all_ones takes one or two size parameters"),
            },
            other => invalid(format!("unknown family {other:?}")),
        }
    }

    /// The family member as a permutation, for the permutation kinds.
    pub fn permutation(self) -> Result<Permutation> {
        match self {
            NamedFamily::Identity(k) => Ok(Permutation::identity(positive(k)?)),
            NamedFamily::Reversal(k) => Ok(Permutation::reversal(positive(k)?)),
            NamedFamily::Cross(k) => cross(k),
            NamedFamily::FoxGrid(k) => fox_grid(k),
            NamedFamily::XMatrix(_) | NamedFamily::AllOnes(..) => {
                invalid(format!("{self:?} is not a permutation matrix"))
            }
        }
    }
}

fn positive(k: usize) -> Result<usize> {
    if k == 0 {
        invalid("size must be at least 1")
    } else {
        Ok(k)
    }
}

pub fn make(kind: NamedFamily) -> Result<BinaryMatrix> {
    match kind {
        NamedFamily::XMatrix(k) => x_matrix(k),
        NamedFamily::AllOnes(r, k) => BinaryMatrix::all_ones(r, k),
        _ => Ok(kind.permutation()?.to_matrix()),
    }
}

pub fn cross(k: usize) -> Result<Permutation> {
    if k % 2 == 0 {
        return invalid(format!("cross requires odd size, got {k}"));
    }
    let images = (1..=k).map(|i| if i % 2 == 1 { i } else { k + 1 - i }).collect();
    Permutation::new(images)
}

pub fn fox_grid(k: usize) -> Result<Permutation> {
    let s = k.isqrt();
    if k == 0 || s * s != k {
        return invalid(format!("fox_grid requires a positive perfect square size, got {k}"));
    }
    let mut images = vec![0; k];
    for a in 0..s {
        for b in 0..s {
            images[a + b * s] = b + a * s + 1;
        }
    }
    Permutation::new(images)
}

pub fn x_matrix(k: usize) -> Result<BinaryMatrix> {
    if k < 2 || k % 2 != 0 {
        return invalid(format!("x_matrix requires even size >= 2, got {k}"));
    }
    BinaryMatrix::from_ones(k, k, (1..=k).flat_map(|i| [(i, i), (i, k + 1 - i)]))
}

/// `P # Q`: ones at `((j-1)k + i, (π(i)-1)l + ρ(j))`.
pub fn grid_product(p: &Permutation, q: &Permutation) -> Permutation {
    let (k, l) = (p.size(), q.size());
    let mut images = vec![0; k * l];
    for i in 1..=k {
        for j in 1..=l {
            images[(j - 1) * k + i - 1] = (p.image(i) - 1) * l + q.image(j);
        }
    }
    Permutation::from_vec_unchecked(images)
}

fn require_square(m: &BinaryMatrix, name: &str) -> Result<usize> {
    if m.rows() != m.cols() {
        return invalid(format!("{name} must be square, got {}x{}", m.rows(), m.cols()));
    }
    Ok(m.rows())
}

/// Block matrix `(0 B / A 0)`: `A` bottom-left, `B` top-right.
pub fn direct_sum(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<BinaryMatrix> {
    let k = require_square(a, "A")?;
    let l = require_square(b, "B")?;
    let ones = a.ones().into_iter().map(|(i, j)| (l + i, j)).chain(b.ones().into_iter().map(|(i, j)| (i, k + j)));
    BinaryMatrix::from_ones(k + l, k + l, ones)
}

/// Block matrix `(A 0 / 0 B)`.
pub fn skew_sum(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<BinaryMatrix> {
    let k = require_square(a, "A")?;
    let l = require_square(b, "B")?;
    let ones = a.ones().into_iter().chain(b.ones().into_iter().map(|(i, j)| (k + i, k + j)));
    BinaryMatrix::from_ones(k + l, k + l, ones)
}

/// Iterated direct sum of identity matrices with the given part sizes.
pub fn layered(parts: &[usize]) -> Result<BinaryMatrix> {
    let (first, rest) = parts.split_first().ok_or_else(|| crate::Error::InvalidArgument("no parts".into()))?;
    let mut acc = Permutation::identity(positive(*first)?).to_matrix();
    for &p in rest {
        acc = direct_sum(&acc, &Permutation::identity(positive(p)?).to_matrix())?;
    }
    Ok(acc)
}

/// Ones at `(i1 + i2, j1 + j2)` for every pair of one-entries.
pub fn minkowski_sum(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<BinaryMatrix> {
    let k = require_square(a, "A")?;
    let l = require_square(b, "B")?;
    let bo = b.ones();
    let ones: Vec<_> =
        a.ones().into_iter().flat_map(|(i1, j1)| bo.iter().map(move |&(i2, j2)| (i1 + i2, j1 + j2))).collect();
    BinaryMatrix::from_ones(k + l, k + l, ones)
}

/// Uniform `k`-permutation from a Fisher–Yates shuffle driven by SplitMix64.
pub fn random_permutation(k: usize, seed: u64) -> Result<Permutation> {
    let mut rng = SeededRng::new(seed);
    random_permutation_with(k, &mut rng)
}

pub fn random_permutation_with(k: usize, rng: &mut SeededRng) -> Result<Permutation> {
    if k == 0 {
        return invalid("random_permutation requires k >= 1");
    }
    let mut images: Vec<usize> = (1..=k).collect();
    images.shuffle(rng);
    Ok(Permutation::from_vec_unchecked(images))
}
