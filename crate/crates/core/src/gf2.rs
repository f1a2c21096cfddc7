//! Dense vectors and matrices over GF(2), bit-packed into 64-bit words.
//!
//! Everything here treats addition as XOR and keeps inputs immutable;
//! elimination-style operations work on internal copies.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("vector length {got} does not match expected length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix row {row} has length {got}, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("matrix row {row} contains a character other than '0' or '1'")]
    InvalidDigit { row: usize },
}

/// A fixed-length bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Indicator vector of `support` inside a vector of length `len`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of bit vectors of unequal length");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn leading_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Parity of the overlap with `other` (the GF(2) inner product).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of bit vectors of unequal length");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::RaggedRow {
                    row: i,
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses newline-separated rows of `'0'`/`'1'` characters.
    pub fn parse_rows(text: &str) -> Result<Self, Gf2Error> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().map(str::trim).enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut row = BitVec::zeros(line.len());
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row.set(j, true),
                    _ => return Err(Gf2Error::InvalidDigit { row: i }),
                }
            }
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r].toggle(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.data[r].weight()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.row_space().rank()
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::new(self)
    }

    /// Whether `v` is a GF(2) combination of the rows of `self`.
    pub fn row_space_contains(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        self.row_space().contains(v)
    }

    /// Basis of the right kernel `{v : self * v = 0}`, ordered by free column.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        // Reduced echelon form with recorded pivot columns.
        let mut work = self.data.clone();
        let mut pivot_cols = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == work.len() {
                break;
            }
            if let Some(p) = (next..work.len()).find(|&i| work[i].get(c)) {
                work.swap(next, p);
                let pivot_row = work[next].clone();
                for (i, row) in work.iter_mut().enumerate() {
                    if i != next && row.get(c) {
                        row.xor_assign(&pivot_row);
                    }
                }
                pivot_cols.push(c);
                next += 1;
            }
        }
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (i, &c) in pivot_cols.iter().enumerate() {
                if work[i].get(f) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// `self * other^T`. Panics if the column counts differ.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(
            self.cols, other.cols,
            "mul_transpose requires equal column counts"
        );
        let mut out = BinaryMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                if self.data[i].dot(&other.data[j]) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BinaryMatrix {
        assert_eq!(perm.len(), self.cols, "permutation length mismatch");
        let mut out = BinaryMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (j, &old) in perm.iter().enumerate() {
                if self.get(r, old) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.data[r])?;
        }
        Ok(())
    }
}

/// Echelonized row space of a matrix, for repeated membership queries.
pub struct RowSpace {
    cols: usize,
    // Echelon rows sorted by pivot column; each row's entries at the other
    // recorded pivot columns that precede it are zero.
    pivots: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new(m: &BinaryMatrix) -> Self {
        let mut pivots: Vec<(usize, BitVec)> = Vec::new();
        for r in 0..m.rows() {
            let mut row = m.row(r).clone();
            for (p, prow) in &pivots {
                if row.get(*p) {
                    row.xor_assign(prow);
                }
            }
            if let Some(p) = row.leading_one() {
                let at = pivots.partition_point(|(q, _)| *q < p);
                pivots.insert(at, (p, row));
            }
        }
        Self {
            cols: m.cols(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut work = v.clone();
        for (p, prow) in &self.pivots {
            if work.get(*p) {
                work.xor_assign(prow);
            }
        }
        Ok(work.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(BinaryMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn identity_kernel_is_empty() {
        assert!(BinaryMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn parity_row_kernel() {
        let m = BinaryMatrix::parse_rows("11").unwrap();
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], BitVec::from_bools(&[true, true]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = BinaryMatrix::parse_rows("110101\n011011\n101110").unwrap();
        assert_eq!(m.kernel_basis().len(), 6 - m.rank());
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn row_space_membership() {
        let m = BinaryMatrix::parse_rows("1100\n0110").unwrap();
        let space = m.row_space();
        assert!(space.contains(&BitVec::zeros(4)).unwrap());
        assert!(space.contains(m.row(0)).unwrap());
        // Sum of the two rows.
        assert!(space
            .contains(&BitVec::from_bools(&[true, false, true, false]))
            .unwrap());
        assert!(!space
            .contains(&BitVec::from_bools(&[false, false, false, true]))
            .unwrap());
        assert!(space.contains(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn mul_transpose_shapes() {
        let a = BinaryMatrix::parse_rows("110\n011").unwrap();
        let b = BinaryMatrix::parse_rows("101\n111\n010\n001").unwrap();
        let c = a.mul_transpose(&b);
        assert_eq!((c.rows(), c.cols()), (2, 4));
        // c[0][1] = (110).(111) = 0 mod 2; c[1][1] = (011).(111) = 0 mod 2.
        assert!(c.get(0, 0));
        assert!(!c.get(0, 1));
        assert!(c.get(1, 2));
    }

    #[test]
    fn empty_matrix_conventions() {
        let m = BinaryMatrix::zeros(0, 5);
        assert_eq!(m.rank(), 0);
        assert!(m.row_space_contains(&BitVec::zeros(5)).unwrap());
        assert!(!m
            .row_space_contains(&BitVec::from_support(5, &[2]))
            .unwrap());
        assert_eq!(m.kernel_basis().len(), 5);
    }

    #[test]
    fn permute_columns_moves_entries() {
        let m = BinaryMatrix::parse_rows("100\n010").unwrap();
        let p = m.permute_columns(&[2, 0, 1]);
        assert!(p.get(0, 1));
        assert!(p.get(1, 2));
        assert!(!p.get(0, 0));
    }

    #[test]
    fn parse_rejects_bad_digit() {
        assert!(matches!(
            BinaryMatrix::parse_rows("10\n1x"),
            Err(Gf2Error::InvalidDigit { row: 1 })
        ));
    }
}
