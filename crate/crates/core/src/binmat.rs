//! Dense bit-packed binary matrices over GF(2).
//!
//! Rows are packed into 64-bit words; pairwise row overlap is a popcount over
//! ANDed words, which is the hot path of every orthogonality check here.

use std::collections::BTreeMap;
use thiserror::Error;

/// Row-pair budget for exact overlap histograms.
pub const DEFAULT_PAIR_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LinalgError {
    #[error("RowCountMismatch: block has {got} rows, expected {expected}")]
    RowCountMismatch { expected: usize, got: usize },
    #[error("DimensionMismatch: {a_rows}x{a_cols} * {b_rows}x{b_cols}")]
    DimensionMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
    #[error("PairBudgetExceeded: {pairs} row pairs exceed budget {budget}")]
    PairBudgetExceeded { pairs: u64, budget: u64 },
}

/// A binary vector packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinVector {
    len: usize,
    words: Vec<u64>,
}

impl BinVector {
    pub fn zeros(len: usize) -> BinVector {
        BinVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BinVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Position-by-position comparison with 0 < 1, position 0 first.
    pub fn lex_less(&self, other: &BinVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        for i in 0..self.len {
            let (a, b) = (self.get(i), other.get(i));
            if a != b {
                return !a;
            }
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

/// Outcome of the self-orthogonality check H * H^T = O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfOrthReport {
    pub ok: bool,
    /// Distinct row pairs (i, j), i < j, with odd overlap.
    pub violating_pairs: Vec<(usize, usize)>,
    /// Rows of odd weight (the diagonal violations).
    pub odd_weight_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityMetrics {
    pub row_weights: Vec<usize>,
    pub col_weights: Vec<usize>,
    pub four_cycle_free: bool,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BinMatrix {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let wpr = cols.div_ceil(64);
        BinMatrix {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> BinMatrix {
        let mut m = BinMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones_column(rows: usize) -> BinMatrix {
        let mut m = BinMatrix::zeros(rows, 1);
        for i in 0..rows {
            m.set(i, 0, true);
        }
        m
    }

    /// Build from dense 0/1 rows; all rows must have equal length.
    pub fn from_dense(rows: &[Vec<u8>]) -> BinMatrix {
        let cols = rows[0].len();
        let mut m = BinMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.wpr + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.wpr + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn row(&self, r: usize) -> BinVector {
        BinVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn col(&self, c: usize) -> BinVector {
        let mut v = BinVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    fn set_row(&mut self, r: usize, v: &BinVector) {
        debug_assert_eq!(v.len, self.cols);
        self.data[r * self.wpr..(r + 1) * self.wpr].copy_from_slice(&v.words);
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (a, b) = (src * self.wpr, dst * self.wpr);
        for k in 0..self.wpr {
            let w = self.data[a + k];
            self.data[b + k] ^= w;
        }
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for r in 0..self.rows {
            for (c, x) in w.iter_mut().enumerate() {
                if self.get(r, c) {
                    *x += 1;
                }
            }
        }
        w
    }

    pub fn row_overlap(&self, i: usize, j: usize) -> usize {
        self.row_words(i)
            .iter()
            .zip(self.row_words(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Horizontal concatenation of blocks sharing a row count.
    pub fn hstack(blocks: &[&BinMatrix]) -> Result<BinMatrix, LinalgError> {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        for b in blocks {
            if b.rows != rows {
                return Err(LinalgError::RowCountMismatch {
                    expected: rows,
                    got: b.rows,
                });
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BinMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    if b.get(r, c) {
                        out.set(r, offset + c, true);
                    }
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation of blocks sharing a column count.
    pub fn vstack(blocks: &[&BinMatrix]) -> Result<BinMatrix, LinalgError> {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        for b in blocks {
            if b.cols != cols {
                return Err(LinalgError::DimensionMismatch {
                    a_rows: blocks[0].rows,
                    a_cols: cols,
                    b_rows: b.rows,
                    b_cols: b.cols,
                });
            }
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BinMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for r in 0..b.rows {
                out.set_row(offset + r, &b.row(r));
            }
            offset += b.rows;
        }
        Ok(out)
    }

    /// Block-diagonal composition diag(a, b).
    pub fn block_diag(a: &BinMatrix, b: &BinMatrix) -> BinMatrix {
        let mut out = BinMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                if a.get(r, c) {
                    out.set(r, c, true);
                }
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                if b.get(r, c) {
                    out.set(a.rows + r, a.cols + c, true);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut out = BinMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &BinMatrix) -> Result<BinMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                a_rows: self.rows,
                a_cols: self.cols,
                b_rows: other.rows,
                b_cols: other.cols,
            });
        }
        let mut out = BinMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..other.wpr {
                        let v = other.data[k * other.wpr + w];
                        out.data[r * out.wpr + w] ^= v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &BinVector) -> BinVector {
        debug_assert_eq!(v.len, self.cols);
        let mut out = BinVector::zeros(self.rows);
        for r in 0..self.rows {
            let dot: u64 = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum();
            if dot % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Reduced row echelon form with the deterministic first-set-bit pivot rule.
    /// Returns (rref, pivot columns).
    pub fn rref(&self) -> (BinMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| m.get(i, c));
            let Some(p) = pivot_row else { continue };
            if p != r {
                for k in 0..m.wpr {
                    m.data.swap(p * m.wpr + k, r * m.wpr + k);
                }
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel: cols - rank independent vectors v with Av = 0.
    pub fn nullspace_basis(&self) -> Vec<BinVector> {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for (free, &is_pivot) in pivot_set.iter().enumerate() {
            if is_pivot {
                continue;
            }
            let mut v = BinVector::zeros(self.cols);
            v.set(free, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if rref.get(i, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn overlap_histogram(&self) -> Result<BTreeMap<usize, u64>, LinalgError> {
        self.overlap_histogram_with_budget(DEFAULT_PAIR_BUDGET)
    }

    /// Exact pairwise row-overlap histogram; fails loudly past the pair budget.
    pub fn overlap_histogram_with_budget(
        &self,
        budget: u64,
    ) -> Result<BTreeMap<usize, u64>, LinalgError> {
        assert!(self.rows >= 2, "overlap histogram needs at least two rows");
        let pairs = self.rows as u64 * (self.rows as u64 - 1) / 2;
        if pairs > budget {
            return Err(LinalgError::PairBudgetExceeded { pairs, budget });
        }
        let mut hist = BTreeMap::new();
        for i in 0..self.rows {
            for j in i + 1..self.rows {
                *hist.entry(self.row_overlap(i, j)).or_insert(0u64) += 1;
            }
        }
        Ok(hist)
    }

    /// Status OK iff self * self^T = O: every row has even weight and every
    /// distinct row pair has even overlap.
    pub fn self_orth_check(&self) -> SelfOrthReport {
        let mut odd_weight_rows = Vec::new();
        let mut violating_pairs = Vec::new();
        for i in 0..self.rows {
            if self.row_weight(i) % 2 == 1 {
                odd_weight_rows.push(i);
            }
            for j in i + 1..self.rows {
                if self.row_overlap(i, j) % 2 == 1 {
                    violating_pairs.push((i, j));
                }
            }
        }
        SelfOrthReport {
            ok: odd_weight_rows.is_empty() && violating_pairs.is_empty(),
            violating_pairs,
            odd_weight_rows,
        }
    }

    pub fn regularity_metrics(&self) -> RegularityMetrics {
        let four_cycle_free =
            (0..self.rows).all(|i| ((i + 1)..self.rows).all(|j| self.row_overlap(i, j) <= 1));
        RegularityMetrics {
            row_weights: self.row_weights(),
            col_weights: self.col_weights(),
            four_cycle_free,
        }
    }

    /// Columns as bit vectors, sorted; equal multisets mean column-permutation
    /// equivalence for fixed rows.
    fn sorted_columns(&self) -> Vec<Vec<u64>> {
        let mut cols: Vec<Vec<u64>> = (0..self.cols).map(|c| self.col(c).words).collect();
        cols.sort_unstable();
        cols
    }
}

/// True iff P * a * Q = b for some row permutation P and column permutation Q.
/// Backtracking over row assignments grouped by row weight; intended for the
/// small matrices printed in worked examples.
pub fn permutation_equivalent(a: &BinMatrix, b: &BinMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let weights_a = a.row_weights();
    let weights_b = b.row_weights();
    let mut wa = weights_a.clone();
    let mut wb = weights_b.clone();
    wa.sort_unstable();
    wb.sort_unstable();
    if wa != wb {
        return false;
    }
    let mut ca = a.col_weights();
    let mut cb = b.col_weights();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return false;
    }

    fn recurse(
        a: &BinMatrix,
        b: &BinMatrix,
        weights_a: &[usize],
        weights_b: &[usize],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = assign.len();
        if i == a.rows() {
            // leaf: rows of a permuted per assign; column multisets must match
            // assign maps b-row -> a-row, so permuted row k mirrors b row k
            let mut permuted = BinMatrix::zeros(a.rows(), a.cols());
            for (dst, &src) in assign.iter().enumerate() {
                permuted.set_row(dst, &a.row(src));
            }
            return permuted.sorted_columns() == b.sorted_columns();
        }
        for j in 0..a.rows() {
            if used[j] || weights_a[j] != weights_b[i] {
                continue;
            }
            used[j] = true;
            assign.push(j);
            if recurse(a, b, weights_a, weights_b, assign, used) {
                return true;
            }
            assign.pop();
            used[j] = false;
        }
        false
    }

    let mut assign = Vec::new();
    let mut used = vec![false; a.rows()];
    recurse(a, b, &weights_a, &weights_b, &mut assign, &mut used)
}
