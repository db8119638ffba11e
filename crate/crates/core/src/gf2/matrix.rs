use std::fmt;

use super::bitvec::{dot_words, words_for, xor_words, BitVector, WORD_BITS};
use crate::error::{Error, Result};

/// Dense matrix over GF(2), rows bit-packed into 64-bit words.
///
/// Padding bits past `cols` in each row are kept zero so that whole-word
/// comparisons and popcounts are valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`BitMatrix::from_rows`] but with an explicit column count, so that
    /// `rows × 0` matrices can be expressed.
    pub fn from_rows_with_cols<R: AsRef<[u8]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn col(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// row[dst] ^= row[src]
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * s);
            xor_words(&mut tail[..s], &head[src * s..(src + 1) * s]);
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            xor_words(&mut head[dst * s..(dst + 1) * s], &tail[..s]);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(
                "mat_mul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let s = other.stride;
                    let src = &other.data[k * s..(k + 1) * s];
                    xor_words(out.row_words_mut(i), src);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if self.cols != v.len() {
            return Err(Error::dim(
                "mat_vec",
                format!("{}x{} times vector of length {}", self.rows, self.cols, v.len()),
            ));
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if dot_words(self.row_words(i), v.words()) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(
                "mat_add",
                format!("{}x{} plus {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        Ok(out)
    }

    /// `[self; other]`, self placed above other.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim(
                "vstack",
                format!("{} columns above {} columns", self.cols, other.cols),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> BitMatrix {
        let picked: Vec<usize> = rows.into_iter().collect();
        let mut out = BitMatrix::zeros(picked.len(), self.cols);
        for (dst, &src) in picked.iter().enumerate() {
            out.row_words_mut(dst).copy_from_slice(self.row_words(src));
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (dst, &src) in cols.iter().enumerate() {
                if self.get(i, src) {
                    out.set(i, dst, true);
                }
            }
        }
        out
    }

    pub fn diagonal_is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i))
    }

    /// The bit-packed word layout of a row (padding bits zero). Used by the
    /// enumerator's inner loops.
    pub fn row_as_words(&self, i: usize) -> &[u64] {
        self.row_words(i)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Strictly-lower-triangular and diagonal parts of a square matrix.
///
/// Entries on and above the diagonal are dropped from `L`; `D` keeps the
/// diagonal only.
pub fn lwtr_diag(a: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    if !a.is_square() {
        return Err(Error::dim(
            "lwtr_diag",
            format!("matrix is {}x{}, not square", a.rows, a.cols),
        ));
    }
    let n = a.rows;
    let mut lower = BitMatrix::zeros(n, n);
    let mut diag = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            if a.get(i, j) {
                lower.set(i, j, true);
            }
        }
        if a.get(i, i) {
            diag.set(i, i, true);
        }
    }
    Ok((lower, diag))
}

pub fn lwtr(a: &BitMatrix) -> Result<BitMatrix> {
    lwtr_diag(a).map(|(l, _)| l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_times_matrix() {
        let m = BitMatrix::from_rows(&[[1, 0], [1, 1], [0, 1]]);
        assert_eq!(BitMatrix::identity(3).mul(&m).unwrap(), m);
        assert_eq!(m.mul(&BitMatrix::identity(2)).unwrap(), m);
    }

    #[test]
    fn one_plus_one_is_zero() {
        let a = BitMatrix::from_rows(&[[1, 1]]);
        let b = BitMatrix::from_rows(&[[1], [1]]);
        assert_eq!(a.mul(&b).unwrap(), BitMatrix::from_rows(&[[0]]));
    }

    #[test]
    fn hand_multiplication() {
        let a = BitMatrix::from_rows(&[[1, 0], [1, 1]]);
        let b = BitMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert_eq!(a.mul(&b).unwrap(), BitMatrix::from_rows(&[[1, 1], [1, 0]]));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = BitMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Dimension { .. })));
    }

    #[test]
    fn lwtr_examples() {
        let (l, d) = lwtr_diag(&BitMatrix::from_rows(&[[1, 1], [1, 1]])).unwrap();
        assert_eq!(l, BitMatrix::from_rows(&[[0, 0], [1, 0]]));
        assert_eq!(d, BitMatrix::identity(2));

        let (l, d) = lwtr_diag(&BitMatrix::identity(3)).unwrap();
        assert!(l.is_zero());
        assert_eq!(d, BitMatrix::identity(3));

        let (l, d) = lwtr_diag(&BitMatrix::from_rows(&[[0, 1], [0, 0]])).unwrap();
        assert!(l.is_zero() && d.is_zero());

        assert!(lwtr_diag(&BitMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut a = BitMatrix::zeros(2, 130);
        a.set(0, 0, true);
        a.set(0, 129, true);
        a.set(1, 64, true);
        let t = a.transpose();
        assert_eq!(t.rows(), 130);
        assert!(t.get(129, 0) && t.get(64, 1));
        let p = a.mul(&t).unwrap();
        assert_eq!(p, BitMatrix::from_rows(&[[0, 0], [0, 1]]));
        a.swap_rows(0, 1);
        assert!(a.get(0, 64) && a.get(1, 129));
        a.xor_row_into(1, 0);
        assert_eq!(a.row(0).weight(), 3);
    }

    #[test]
    fn empty_shapes() {
        let a = BitMatrix::zeros(3, 0);
        let b = BitMatrix::zeros(0, 2);
        let p = a.mul(&b).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 2));
        assert!(p.is_zero());
    }
}
