//! Binary matrices, permutations, containment and interval minors.
//!
//! Every public index is 1-based. Rows are stored bit-packed into `u64`
//! words so that row intersections and "block has a one" tests are
//! word-parallel.

use std::fmt;

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

/// Largest host dimension accepted by [`is_interval_minor`].
pub const INTERVAL_MINOR_LIMIT: usize = 14;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return invalid(format!("matrix dimensions must be positive, got {rows}x{cols}"));
        }
        let stride = cols.div_ceil(WORD);
        Ok(BinaryMatrix { rows, cols, stride, words: vec![0; rows * stride] })
    }

    pub fn all_ones(rows: usize, cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.put(r, c, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from 1-based positions of its one-entries.
    pub fn from_ones<I>(rows: usize, cols: usize, ones: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols)?;
        for (i, j) in ones {
            if i == 0 || i > rows || j == 0 || j > cols {
                return invalid(format!("position ({i},{j}) outside {rows}x{cols}"));
            }
            m.put(i - 1, j - 1, true);
        }
        Ok(m)
    }

    /// Row-major bits, `true` meaning a one-entry.
    pub fn from_bits(rows: usize, cols: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != rows * cols {
            return invalid(format!("expected {} bits, got {}", rows * cols, bits.len()));
        }
        let mut m = Self::zeros(rows, cols)?;
        for (idx, &b) in bits.iter().enumerate() {
            if b {
                m.put(idx / cols, idx % cols, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "index out of range");
        self.bit(i - 1, j - 1)
    }

    /// Sets the entry at 1-based position `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "index out of range");
        self.put(i - 1, j - 1, value);
    }

    #[inline]
    pub(crate) fn bit(&self, r: usize, c: usize) -> bool {
        self.words[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn put(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.words[r * self.stride + c / WORD];
        if value {
            *w |= 1 << (c % WORD);
        } else {
            *w &= !(1 << (c % WORD));
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 1-based positions of all one-entries in row-major order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.count_ones());
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.bit(r, c) {
                    out.push((r + 1, c + 1));
                }
            }
        }
        out
    }

    pub fn zeros_in_row(&self, i: usize) -> usize {
        let ones: usize = self.row_words(i - 1).iter().map(|w| w.count_ones() as usize).sum();
        self.cols - ones
    }

    pub fn zeros_in_col(&self, j: usize) -> usize {
        (0..self.rows).filter(|&r| !self.bit(r, j - 1)).count()
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).filter(|&c| self.bit(r, c)).count() == 1)
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| self.bit(r, c)).count() == 1)
    }

    /// Submatrix on the given 1-based rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut out = Self::zeros(rows.len(), cols.len())?;
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if i == 0 || i > self.rows || j == 0 || j > self.cols {
                    return invalid(format!("index ({i},{j}) outside {}x{}", self.rows, self.cols));
                }
                if self.bit(i - 1, j - 1) {
                    out.put(a, b, true);
                }
            }
        }
        Ok(out)
    }

    /// True when every one-entry of `other` is also a one-entry of `self`.
    pub fn dominates(&self, other: &BinaryMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.words.iter().zip(&other.words).all(|(a, b)| b & !a == 0)
    }

    pub fn symmetry(&self, op: Symmetry) -> BinaryMatrix {
        let (rows, cols) = match op {
            Symmetry::Transpose | Symmetry::Rotate90 => (self.cols, self.rows),
            Symmetry::FlipRows | Symmetry::FlipCols => (self.rows, self.cols),
        };
        let mut out = BinaryMatrix::zeros(rows, cols).expect("dimensions are positive");
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.bit(r, c) {
                    continue;
                }
                let (nr, nc) = match op {
                    Symmetry::Transpose => (c, r),
                    // clockwise quarter turn
                    Symmetry::Rotate90 => (c, self.rows - 1 - r),
                    Symmetry::FlipRows => (self.rows - 1 - r, c),
                    Symmetry::FlipCols => (r, self.cols - 1 - c),
                };
                out.put(nr, nc, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BinaryMatrix {
        self.symmetry(Symmetry::Transpose)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.bit(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The shared matrix text format: a `rows cols` header, then one line of
/// `0`/`1` characters per row.
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.bit(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dihedral symmetries of a rectangular matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Transpose,
    Rotate90,
    FlipRows,
    FlipCols,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] =
        [Symmetry::Transpose, Symmetry::Rotate90, Symmetry::FlipRows, Symmetry::FlipCols];

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Transpose => "transpose",
            Symmetry::Rotate90 => "rotate90",
            Symmetry::FlipRows => "flip_rows",
            Symmetry::FlipCols => "flip_cols",
        }
    }

    pub fn from_name(name: &str) -> Option<Symmetry> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// A permutation of `[k]` in one-line notation, values 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return invalid("a permutation needs at least one element");
        }
        let mut seen = vec![false; k];
        for &v in &images {
            if v == 0 || v > k || seen[v - 1] {
                return invalid(format!("{images:?} is not a bijection of [{k}]"));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Unchecked constructor for internal callers that already hold a bijection.
    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(k: usize) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    /// `(k, k-1, ..., 1)`, whose matrix has ones on the antidiagonal.
    pub fn reversal(k: usize) -> Self {
        Permutation { images: (1..=k).rev().collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Matrix with `P[i][π(i)] = 1`.
    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_ones(self.size(), self.size(), self.images.iter().enumerate().map(|(i, &v)| (i + 1, v)))
            .expect("permutation positions are in range")
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Result<Self> {
        if !m.is_permutation_matrix() {
            return invalid("matrix is not a permutation matrix");
        }
        let images = (0..m.rows()).map(|r| (0..m.cols()).find(|&c| m.bit(r, c)).unwrap() + 1).collect();
        Ok(Permutation { images })
    }

    pub fn symmetry(&self, op: Symmetry) -> Permutation {
        Permutation::from_matrix(&self.to_matrix().symmetry(op)).expect("symmetries preserve permutation matrices")
    }

    /// The pattern formed by the values at the given increasing 1-based positions.
    pub fn restriction(&self, positions: &[usize]) -> Result<Permutation> {
        if positions.is_empty() {
            return invalid("restriction needs at least one position");
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return invalid(format!("positions {positions:?} are not strictly increasing"));
            }
        }
        if positions[0] == 0 || *positions.last().unwrap() > self.size() {
            return invalid(format!("positions {positions:?} outside [1, {}]", self.size()));
        }
        let values: Vec<usize> = positions.iter().map(|&s| self.images[s - 1]).collect();
        Ok(Permutation { images: ranks(&values) })
    }
}

/// 1-based ranks of distinct values.
pub(crate) fn ranks(values: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    let mut out = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank + 1;
    }
    out
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

/// Space-separated one-line notation, e.g. `1 4 3 2 5`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A partition of `[n]` into consecutive nonempty intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalDecomposition {
    total: usize,
    // 0-based start of each interval
    starts: Vec<usize>,
}

impl IntervalDecomposition {
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidDecomposition(format!("interval sizes {sizes:?} must be positive")));
        }
        let mut starts = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            starts.push(acc);
            acc += s;
        }
        Ok(IntervalDecomposition { total: acc, starts })
    }

    /// Cut positions `c` mean a new interval starts at row `c + 1`.
    pub fn from_cuts(total: usize, cuts: &[usize]) -> Result<Self> {
        let mut starts = vec![0];
        let mut prev = 0;
        for &c in cuts {
            if c <= prev || c >= total {
                return Err(Error::InvalidDecomposition(format!(
                    "cuts {cuts:?} must be strictly increasing within (0, {total})"
                )));
            }
            starts.push(c);
            prev = c;
        }
        Ok(IntervalDecomposition { total, starts })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// 0-based half-open range of interval `idx` (0-based).
    pub(crate) fn range(&self, idx: usize) -> std::ops::Range<usize> {
        let end = self.starts.get(idx + 1).copied().unwrap_or(self.total);
        self.starts[idx]..end
    }

    /// 1-based inclusive bounds of every interval.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        (0..self.len()).map(|i| {
            let r = self.range(i);
            (r.start + 1, r.end)
        }).collect()
    }
}

/// Increasing maps of pattern rows and columns into host rows and columns (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

impl Embedding {
    /// Checks both maps are strictly increasing, in range, and cover every
    /// one-entry of `pattern` by a one-entry of `host`.
    pub fn is_valid(&self, host: &BinaryMatrix, pattern: &BinaryMatrix) -> bool {
        let increasing = |m: &[usize], bound: usize| {
            m.windows(2).all(|w| w[0] < w[1]) && m.iter().all(|&x| x >= 1 && x <= bound)
        };
        self.row_map.len() == pattern.rows()
            && self.col_map.len() == pattern.cols()
            && increasing(&self.row_map, host.rows())
            && increasing(&self.col_map, host.cols())
            && pattern.ones().into_iter().all(|(i, j)| host.get(self.row_map[i - 1], self.col_map[j - 1]))
    }
}

/// Finds an occurrence of `pattern` in `host`, if any.
///
/// Pattern columns are mapped to host columns left to right. After each
/// choice every pattern row carries the set of host columns its ones must
/// hit, and the earliest feasible host row of each pattern row is found
/// greedily; a branch dies as soon as some pattern row has no feasible row
/// left.
pub fn contains(host: &BinaryMatrix, pattern: &BinaryMatrix) -> Option<Embedding> {
    let (k, l) = (pattern.rows(), pattern.cols());
    let (n, m) = (host.rows(), host.cols());
    if k > n || l > m || pattern.count_ones() > host.count_ones() {
        return None;
    }
    let mut search = Containment::new(host, pattern);
    let mut cols = Vec::with_capacity(l);
    if search.assign(0, 0, &mut cols) {
        let rows = search.greedy_rows().expect("final assignment was feasible");
        Some(Embedding {
            row_map: rows.into_iter().map(|r| r + 1).collect(),
            col_map: cols.into_iter().map(|c| c + 1).collect(),
        })
    } else {
        None
    }
}

struct Containment<'a> {
    host: &'a BinaryMatrix,
    // pattern rows holding a one in each pattern column
    col_rows: Vec<Vec<usize>>,
    col_weight: Vec<usize>,
    host_col_weight: Vec<usize>,
    // required host columns per pattern row, `stride` words each
    masks: Vec<u64>,
    stride: usize,
    k: usize,
}

impl<'a> Containment<'a> {
    fn new(host: &'a BinaryMatrix, pattern: &BinaryMatrix) -> Self {
        let col_rows: Vec<Vec<usize>> =
            (0..pattern.cols()).map(|c| (0..pattern.rows()).filter(|&r| pattern.bit(r, c)).collect()).collect();
        let col_weight = col_rows.iter().map(Vec::len).collect();
        let host_col_weight = (0..host.cols()).map(|c| (0..host.rows()).filter(|&r| host.bit(r, c)).count()).collect();
        let stride = host.stride();
        Containment {
            host,
            col_rows,
            col_weight,
            host_col_weight,
            masks: vec![0; pattern.rows() * stride],
            stride,
            k: pattern.rows(),
        }
    }

    fn assign(&mut self, j: usize, first: usize, cols: &mut Vec<usize>) -> bool {
        let l = self.col_rows.len();
        if j == l {
            return true;
        }
        let last = self.host.cols() - (l - j);
        for c in first..=last {
            if self.host_col_weight[c] < self.col_weight[j] {
                continue;
            }
            self.toggle(j, c);
            if self.greedy_rows().is_some() {
                cols.push(c);
                if self.assign(j + 1, c + 1, cols) {
                    return true;
                }
                cols.pop();
            }
            self.toggle(j, c);
        }
        false
    }

    fn toggle(&mut self, j: usize, c: usize) {
        for &r in &self.col_rows[j] {
            self.masks[r * self.stride + c / WORD] ^= 1 << (c % WORD);
        }
    }

    /// Earliest host row for each pattern row, or `None` if the current
    /// column assignment cannot be completed on the row side.
    fn greedy_rows(&self) -> Option<Vec<usize>> {
        let n = self.host.rows();
        let mut rows = Vec::with_capacity(self.k);
        let mut next = 0;
        for i in 0..self.k {
            let mask = &self.masks[i * self.stride..(i + 1) * self.stride];
            let limit = n - (self.k - i);
            let mut found = None;
            for r in next..=limit {
                let row = self.host.row_words(r);
                if row.iter().zip(mask).all(|(h, m)| h & m == *m) {
                    found = Some(r);
                    break;
                }
            }
            let r = found?;
            rows.push(r);
            next = r + 1;
        }
        Some(rows)
    }
}

/// Contracts every block of the decomposition to a single entry that is one
/// iff the block holds a one.
pub fn contract(
    host: &BinaryMatrix,
    row_decomp: &IntervalDecomposition,
    col_decomp: &IntervalDecomposition,
) -> Result<BinaryMatrix> {
    if row_decomp.total() != host.rows() || col_decomp.total() != host.cols() {
        return Err(Error::InvalidDecomposition(format!(
            "decompositions cover {}x{} but the matrix is {}x{}",
            row_decomp.total(),
            col_decomp.total(),
            host.rows(),
            host.cols()
        )));
    }
    let mut out = BinaryMatrix::zeros(row_decomp.len(), col_decomp.len())?;
    for bi in 0..row_decomp.len() {
        for bj in 0..col_decomp.len() {
            let hit = row_decomp.range(bi).any(|r| col_decomp.range(bj).any(|c| host.bit(r, c)));
            if hit {
                out.put(bi, bj, true);
            }
        }
    }
    Ok(out)
}

/// Decides whether `pattern` is an interval minor of `host`.
///
/// Row decompositions into exactly `pattern.rows()` intervals are enumerated
/// exhaustively. For each, the column decomposition is chosen greedily: every
/// column interval is closed at the first column where all pattern rows that
/// need a one in it have one, which is optimal because a shorter interval
/// leaves a longer suffix for the remaining ones.
pub fn is_interval_minor(pattern: &BinaryMatrix, host: &BinaryMatrix) -> Result<bool> {
    if host.rows() > INTERVAL_MINOR_LIMIT || host.cols() > INTERVAL_MINOR_LIMIT {
        return Err(Error::SizeLimit(format!(
            "interval-minor test is exhaustive and limited to hosts of at most {INTERVAL_MINOR_LIMIT}x{INTERVAL_MINOR_LIMIT}, got {}x{}",
            host.rows(),
            host.cols()
        )));
    }
    let (k, l) = (pattern.rows(), pattern.cols());
    let (n, m) = (host.rows(), host.cols());
    if k > n || l > m {
        return Ok(false);
    }
    let host_rows: Vec<u64> = (0..n).map(|r| host.row_words(r)[0]).collect();
    let need: Vec<Vec<usize>> = (0..l).map(|c| (0..k).filter(|&r| pattern.bit(r, c)).collect()).collect();
    let mut found = false;
    for_each_cut_set(n, k, |cuts| {
        let mut merged = vec![0u64; k];
        let mut block = 0;
        for (r, row) in host_rows.iter().enumerate() {
            if block + 1 < k && r == cuts[block] {
                block += 1;
            }
            merged[block] |= row;
        }
        if columns_fit(&merged, &need, m) {
            found = true;
        }
        found
    });
    Ok(found)
}

fn columns_fit(merged: &[u64], need: &[Vec<usize>], m: usize) -> bool {
    let l = need.len();
    let mut pos = 0;
    for (j, rows) in need.iter().enumerate() {
        let mut end = pos;
        for &r in rows {
            let rest = merged[r] >> pos;
            if rest == 0 {
                return false;
            }
            end = end.max(pos + rest.trailing_zeros() as usize);
        }
        if end + (l - j) > m {
            return false;
        }
        pos = end + 1;
    }
    true
}

/// Calls `f` with every strictly increasing list of `parts - 1` cut
/// positions in `1..total`; stops early when `f` returns `true`.
pub(crate) fn for_each_cut_set(total: usize, parts: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(total: usize, need: usize, start: usize, cuts: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if need == 0 {
            return f(cuts);
        }
        for c in start..=(total - need) {
            cuts.push(c);
            if rec(total, need - 1, c + 1, cuts, f) {
                return true;
            }
            cuts.pop();
        }
        false
    }
    let mut cuts = Vec::with_capacity(parts.saturating_sub(1));
    rec(total, parts - 1, 1, &mut cuts, &mut f);
}
