//! Dense linear algebra over GF(2).

mod bitvec;
mod elim;
mod matrix;
mod replacement;

pub use bitvec::BitVector;
pub use elim::{
    affine_solutions, factor_rank, nullspace_basis, rank, row_reduce, solve_affine, AffineSolutions, EchelonForm,
    SpanBasis,
};
pub use matrix::{lwtr, lwtr_diag, BitMatrix};
pub use replacement::full_rank_replacement;
