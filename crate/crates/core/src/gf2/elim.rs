//! Gaussian elimination and the routines built on it.
//!
//! Pivot selection is fixed: columns are scanned left to right and the first
//! row at or below the current position holding a one becomes the pivot row.
//! Every routine here is therefore deterministic.

use super::bitvec::BitVector;
use super::matrix::BitMatrix;
use crate::error::{Error, Result};

/// Reduced row-echelon form of a matrix together with the invertible row
/// transform that produced it: `transform · original = reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub reduced: BitMatrix,
    pub transform: BitMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

pub fn row_reduce(a: &BitMatrix) -> EchelonForm {
    let mut r = a.clone();
    let mut u = BitMatrix::identity(a.rows());
    let mut pivots = Vec::new();
    let mut next = 0;
    for j in 0..a.cols() {
        if next == a.rows() {
            break;
        }
        let Some(p) = (next..a.rows()).find(|&i| r.get(i, j)) else {
            continue;
        };
        r.swap_rows(next, p);
        u.swap_rows(next, p);
        for i in 0..a.rows() {
            if i != next && r.get(i, j) {
                r.xor_row_into(next, i);
                u.xor_row_into(next, i);
            }
        }
        pivots.push(j);
        next += 1;
    }
    EchelonForm {
        reduced: r,
        transform: u,
        rank: next,
        pivots,
    }
}

/// Rank without tracking the transform.
pub fn rank(a: &BitMatrix) -> usize {
    let mut r = a.clone();
    let mut next = 0;
    for j in 0..a.cols() {
        if next == a.rows() {
            break;
        }
        let Some(p) = (next..a.rows()).find(|&i| r.get(i, j)) else {
            continue;
        };
        r.swap_rows(next, p);
        for i in next + 1..a.rows() {
            if r.get(i, j) {
                r.xor_row_into(next, i);
            }
        }
        next += 1;
    }
    next
}

/// Basis of `{v : A v = 0}` returned as the columns of an
/// `A.cols × (A.cols − rank)` matrix, one column per free variable in
/// increasing column order.
pub fn nullspace_basis(a: &BitMatrix) -> BitMatrix {
    let ef = row_reduce(a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &ef.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut basis = BitMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, true);
        for (row, &p) in ef.pivots.iter().enumerate() {
            if ef.reduced.get(row, f) {
                basis.set(p, k, true);
            }
        }
    }
    basis
}

/// The full solution set of `A v = c`, parametrized so that enumerating the
/// free-variable assignments in binary order visits solutions in
/// lexicographic order (entry 0 most significant).
#[derive(Clone, Debug)]
pub struct AffineSolutions {
    /// Lexicographically smallest solution.
    pub particular: BitVector,
    /// Free coordinates in increasing index order.
    pub free: Vec<usize>,
    /// `directions[t]` has a one at `free[t]`, zeros at every other free
    /// coordinate, and spans the kernel together with its siblings.
    pub directions: Vec<BitVector>,
}

impl AffineSolutions {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }
}

/// Solves `A v = c` by eliminating on the column-reversed matrix, so that
/// pivot variables only depend on free variables of smaller index.
pub fn affine_solutions(a: &BitMatrix, c: &BitVector) -> Result<Option<AffineSolutions>> {
    if a.rows() != c.len() {
        return Err(Error::dim(
            "solve_affine",
            format!("{} rows but right-hand side of length {}", a.rows(), c.len()),
        ));
    }
    let n = a.cols();
    let rev: Vec<usize> = (0..n).rev().collect();
    let reversed = a.select_cols(&rev);
    let ef = row_reduce(&reversed);
    let rhs = ef.transform.mul_vec(c)?;
    if (ef.rank..a.rows()).any(|i| rhs.get(i)) {
        return Ok(None);
    }

    let orig = |rj: usize| n - 1 - rj;
    let mut is_pivot = vec![false; n];
    let mut particular = BitVector::zeros(n);
    for (row, &p) in ef.pivots.iter().enumerate() {
        is_pivot[orig(p)] = true;
        if rhs.get(row) {
            particular.set(orig(p), true);
        }
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = BitVector::unit(n, f);
            for (row, &p) in ef.pivots.iter().enumerate() {
                if ef.reduced.get(row, orig(f)) {
                    d.set(orig(p), true);
                }
            }
            d
        })
        .collect();
    Ok(Some(AffineSolutions {
        particular,
        free,
        directions,
    }))
}

/// Lexicographically smallest `v` with `A v = c`, or `None` if the system is
/// inconsistent.
pub fn solve_affine(a: &BitMatrix, c: &BitVector) -> Result<Option<BitVector>> {
    Ok(affine_solutions(a, c)?.map(|s| s.particular))
}

/// Rank factorization `C = X·Yᵀ` where `X` and `Y` both have `rank(C)`
/// independent columns.
///
/// `X` takes the pivot columns of `C`; `Yᵀ` is the nonzero block of the
/// reduced row-echelon form.
pub fn factor_rank(c: &BitMatrix) -> (BitMatrix, BitMatrix) {
    let ef = row_reduce(c);
    let x = c.select_cols(&ef.pivots);
    let y = ef.reduced.select_rows(0..ef.rank).transpose();
    (x, y)
}

/// Incrementally maintained basis of a subspace of GF(2)^len, kept with
/// distinct leading positions so membership is one reduction pass.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    len: usize,
    // sorted by leading position
    vectors: Vec<(usize, BitVector)>,
}

impl SpanBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            vectors: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.len);
        let mut r = v.clone();
        for (lead, b) in &self.vectors {
            if r.get(*lead) {
                r.xor_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(lead) => {
                let at = self.vectors.partition_point(|(l, _)| *l < lead);
                self.vectors.insert(at, (lead, r));
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_reduce_identity() {
        let ef = row_reduce(&BitMatrix::identity(3));
        assert_eq!(ef.reduced, BitMatrix::identity(3));
        assert_eq!(ef.rank, 3);
    }

    #[test]
    fn row_reduce_equal_rows() {
        let ef = row_reduce(&BitMatrix::from_rows(&[[1, 1], [1, 1]]));
        assert_eq!(ef.rank, 1);
        assert_eq!(ef.reduced, BitMatrix::from_rows(&[[1, 1], [0, 0]]));
    }

    #[test]
    fn row_reduce_swap() {
        let a = BitMatrix::from_rows(&[[0, 1], [1, 0]]);
        let ef = row_reduce(&a);
        assert_eq!(ef.reduced, BitMatrix::identity(2));
        assert_eq!(ef.rank, 2);
        assert_eq!(ef.transform, a);
    }

    #[test]
    fn nullspace_examples() {
        let k = nullspace_basis(&BitMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k, BitMatrix::from_rows(&[[1], [1]]));
        assert_eq!(nullspace_basis(&BitMatrix::identity(2)).cols(), 0);
        assert_eq!(nullspace_basis(&BitMatrix::zeros(2, 2)), BitMatrix::identity(2));
    }

    #[test]
    fn solve_affine_examples() {
        let v = solve_affine(&BitMatrix::identity(2), &BitVector::from_u8s(&[1, 0]))
            .unwrap()
            .unwrap();
        assert_eq!(v, BitVector::from_u8s(&[1, 0]));

        let v = solve_affine(&BitMatrix::from_rows(&[[1, 1]]), &BitVector::from_u8s(&[1]))
            .unwrap()
            .unwrap();
        assert_eq!(v, BitVector::from_u8s(&[0, 1]));

        let none = solve_affine(&BitMatrix::from_rows(&[[1, 1], [1, 1]]), &BitVector::from_u8s(&[1, 0])).unwrap();
        assert!(none.is_none());

        assert!(solve_affine(&BitMatrix::identity(2), &BitVector::zeros(3)).is_err());
    }

    #[test]
    fn factor_rank_examples() {
        let (x, y) = factor_rank(&BitMatrix::identity(2));
        assert_eq!((x, y), (BitMatrix::identity(2), BitMatrix::identity(2)));

        let (x, y) = factor_rank(&BitMatrix::from_rows(&[[1, 1], [1, 1]]));
        assert_eq!(x, BitMatrix::from_rows(&[[1], [1]]));
        assert_eq!(y, BitMatrix::from_rows(&[[1], [1]]));

        let (x, y) = factor_rank(&BitMatrix::zeros(2, 2));
        assert_eq!((x.rows(), x.cols(), y.rows(), y.cols()), (2, 0, 2, 0));
        assert!(x.mul(&y.transpose()).unwrap().is_zero());
    }

    #[test]
    fn span_basis_membership() {
        let mut s = SpanBasis::new(3);
        assert!(s.contains(&BitVector::zeros(3)));
        assert!(s.insert(&BitVector::from_u8s(&[1, 1, 0])));
        assert!(s.insert(&BitVector::from_u8s(&[0, 1, 1])));
        assert!(!s.insert(&BitVector::from_u8s(&[1, 0, 1])));
        assert!(!s.contains(&BitVector::from_u8s(&[1, 0, 0])));
        assert_eq!(s.dimension(), 2);
    }
}
