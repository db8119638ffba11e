//! Replacing a rank-deficient `H0` by a full-rank `H2` while keeping the
//! strictly lower triangle and the diagonal of `H0ᵀ·H1`.

use super::bitvec::BitVector;
use super::elim::{affine_solutions, rank, AffineSolutions, SpanBasis};
use super::matrix::{lwtr, BitMatrix};
use crate::error::{Error, Result};

const OP: &str = "full_rank_replacement";

/// Returns `H2` (n×N) of rank n with `lwtr(H2ᵀH1) = lwtr(H0ᵀH1)` and
/// `diag(H2ᵀH1) = I`.
///
/// Only the first n columns change. They are rebuilt from the last to the
/// first: column j must satisfy `d_iᵀ c'_j = d_iᵀ c_j` for every `i ≤ j`
/// (`c`, `d` the columns of `H0`, `H1`) and lie outside the span of the
/// columns already rebuilt; among those candidates the lexicographically
/// smallest is taken. An already full-rank `H0` is returned unchanged.
///
/// The result is checked against all three postconditions before it is
/// returned; a failed check is reported as [`Error::Internal`].
pub fn full_rank_replacement(h0: &BitMatrix, h1: &BitMatrix) -> Result<BitMatrix> {
    let (n, big_n) = (h0.rows(), h0.cols());
    if h1.rows() != n || h1.cols() != big_n {
        return Err(Error::dim(
            OP,
            format!("H0 is {n}x{big_n} but H1 is {}x{}", h1.rows(), h1.cols()),
        ));
    }
    if big_n < n {
        return Err(Error::pre(
            OP,
            format!("need at least as many columns as rows, got {n}x{big_n}"),
        ));
    }
    let gram = h0.transpose().mul(h1)?;
    if let Some(j) = (0..big_n).find(|&j| !gram.get(j, j)) {
        return Err(Error::pre(OP, format!("diag(H0ᵀH1) has a zero at position {j}")));
    }

    let h2 = if rank(h0) == n {
        h0.clone()
    } else {
        rebuild_leading_columns(h0, h1)?
    };
    verify(h0, h1, &h2)?;
    Ok(h2)
}

fn rebuild_leading_columns(h0: &BitMatrix, h1: &BitMatrix) -> Result<BitMatrix> {
    let n = h0.rows();
    let c: Vec<BitVector> = (0..n).map(|j| h0.col(j)).collect();
    let d: Vec<BitVector> = (0..n).map(|j| h1.col(j)).collect();

    let mut chosen = SpanBasis::new(n);
    let mut h2 = h0.clone();
    for j in (0..n).rev() {
        let constraints = BitMatrix::from_row_vectors(n, &d[..=j]);
        let rhs = BitVector::from_bits(&d[..=j].iter().map(|di| di.dot(&c[j])).collect::<Vec<_>>());
        let solutions = affine_solutions(&constraints, &rhs)?
            .ok_or_else(|| Error::internal(OP, format!("constraints for column {j} are inconsistent")))?;
        let cj = lex_min_outside_span(&solutions, &chosen).ok_or_else(|| {
            Error::internal(
                OP,
                format!("every admissible column {j} lies in the span of the later columns"),
            )
        })?;
        chosen.insert(&cj);
        for i in 0..n {
            h2.set(i, j, cj.get(i));
        }
    }
    Ok(h2)
}

/// Smallest element of the affine solution set that is not in `span`.
///
/// Decides the free coordinates greedily in significance order: a coordinate
/// stays 0 whenever some completion of the current prefix still escapes the
/// span. A prefix's completions form `base + span(remaining directions)`,
/// which lies inside `span` iff `base` and every remaining direction do.
pub(crate) fn lex_min_outside_span(sol: &AffineSolutions, span: &SpanBasis) -> Option<BitVector> {
    let escapes = |base: &BitVector, rest: &[BitVector]| !span.contains(base) || rest.iter().any(|d| !span.contains(d));
    let mut base = sol.particular.clone();
    if !escapes(&base, &sol.directions) {
        return None;
    }
    for t in 0..sol.directions.len() {
        let rest = &sol.directions[t + 1..];
        if !escapes(&base, rest) {
            base.xor_assign(&sol.directions[t]);
        }
    }
    debug_assert!(!span.contains(&base));
    Some(base)
}

fn verify(h0: &BitMatrix, h1: &BitMatrix, h2: &BitMatrix) -> Result<()> {
    let n = h0.rows();
    if rank(h2) != n {
        return Err(Error::internal(OP, "H2 is not full rank"));
    }
    let before = h0.transpose().mul(h1)?;
    let after = h2.transpose().mul(h1)?;
    if lwtr(&before)? != lwtr(&after)? {
        return Err(Error::internal(OP, "lower triangle of H2ᵀH1 changed"));
    }
    if !after.diagonal_is_identity() {
        return Err(Error::internal(OP, "diagonal of H2ᵀH1 is not the identity"));
    }
    for j in n..h0.cols() {
        if h0.col(j) != h2.col(j) {
            return Err(Error::internal(OP, format!("column {j} beyond the first n changed")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rank_input_is_returned_unchanged() {
        let h1 = BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        let h0 = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        assert_eq!(full_rank_replacement(&h0, &h1).unwrap(), h0);
        let id = BitMatrix::identity(2);
        assert_eq!(full_rank_replacement(&id, &id).unwrap(), id);
    }

    #[test]
    fn hand_solved_rank_one_case() {
        let h0 = BitMatrix::from_rows(&[[1, 1], [1, 1]]);
        let h1 = BitMatrix::identity(2);
        let h2 = full_rank_replacement(&h0, &h1).unwrap();
        assert_eq!(h2, BitMatrix::from_rows(&[[1, 1], [0, 1]]));
    }

    #[test]
    fn diagonal_precondition() {
        let h0 = BitMatrix::from_rows(&[[1, 0], [1, 0]]);
        let h1 = BitMatrix::identity(2);
        assert!(matches!(
            full_rank_replacement(&h0, &h1),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn shape_preconditions() {
        let h = BitMatrix::identity(2);
        assert!(matches!(
            full_rank_replacement(&h, &BitMatrix::zeros(2, 3)),
            Err(Error::Dimension { .. })
        ));
        let tall = BitMatrix::from_rows(&[[1], [0]]);
        assert!(matches!(
            full_rank_replacement(&tall, &tall),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn lex_min_outside_span_skips_span_members() {
        // x0 = 1, x1 free: solutions (1,0) and (1,1)
        let a = BitMatrix::from_rows(&[[1, 0]]);
        let sol = affine_solutions(&a, &BitVector::from_u8s(&[1])).unwrap().unwrap();
        let mut span = SpanBasis::new(2);
        assert_eq!(lex_min_outside_span(&sol, &span), Some(BitVector::from_u8s(&[1, 0])));
        span.insert(&BitVector::from_u8s(&[1, 0]));
        assert_eq!(lex_min_outside_span(&sol, &span), Some(BitVector::from_u8s(&[1, 1])));
        span.insert(&BitVector::from_u8s(&[0, 1]));
        assert_eq!(lex_min_outside_span(&sol, &span), None);
    }
}
