//! Quadratically signed weight enumerators
//!
//! `S(A, B, x, y) = Σ_{b : Ab = 0} (−1)^{bᵀBb} x^{|b|} y^{n−|b|}`
//!
//! evaluated exactly. [`eval`] walks the kernel of `A` in Gray-code order and
//! only tallies signed counts per weight; the big-integer polynomial is formed
//! once at the end. [`eval_naive`] is the brute-force reference.

use std::thread;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gf2::{lwtr, nullspace_basis, BitMatrix};
use crate::pauli::Sign;

pub const DEFAULT_KERNEL_LIMIT: usize = 28;
/// Hard ceiling imposed by the 64-bit kernel coordinate word.
pub const MAX_KERNEL_DIM: usize = 62;
pub const NAIVE_LIMIT: usize = 20;
pub const THREADS_ENV: &str = "QSWE_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QsweInstance {
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub x: u64,
    pub y: u64,
}

impl QsweInstance {
    pub fn new(a: BitMatrix, b: BitMatrix, x: u64, y: u64) -> Result<Self> {
        let n = a.cols();
        if b.rows() != n || b.cols() != n {
            return Err(Error::dim(
                "QsweInstance",
                format!("A has {n} columns but B is {}x{}", b.rows(), b.cols()),
            ));
        }
        if x == 0 || y == 0 {
            return Err(Error::pre(
                "QsweInstance",
                format!("x and y must be positive, got x={x} y={y}"),
            ));
        }
        Ok(Self { a, b, x, y })
    }

    /// Number of summation variables.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Number of constraints.
    pub fn m(&self) -> usize {
        self.a.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub kernel_limit: usize,
    pub threads: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            kernel_limit: DEFAULT_KERNEL_LIMIT,
            threads: 1,
        }
    }
}

impl EvalOptions {
    /// Defaults, with the worker count taken from `QSWE_THREADS` when it holds
    /// a positive integer.
    pub fn from_env() -> Self {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
            .unwrap_or(1);
        Self {
            threads,
            ..Self::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_kernel_limit(mut self, limit: usize) -> Self {
        self.kernel_limit = limit;
        self
    }
}

pub fn eval(inst: &QsweInstance) -> Result<BigInt> {
    eval_with(inst, &EvalOptions::default())
}

pub fn eval_with(inst: &QsweInstance, opts: &EvalOptions) -> Result<BigInt> {
    let walk = KernelWalk::new(inst, opts.kernel_limit)?;
    let counts = walk.signed_counts(opts.threads);
    Ok(weight_polynomial(&counts, inst.x, inst.y))
}

/// Σ_w counts[w]·x^w·y^{n−w}
fn weight_polynomial(counts: &[i64], x: u64, y: u64) -> BigInt {
    let n = counts.len() - 1;
    let x = BigInt::from(x);
    let y = BigInt::from(y);
    let mut ypow = vec![BigInt::from(1); n + 1];
    for w in 1..=n {
        ypow[w] = &ypow[w - 1] * &y;
    }
    let mut xpow = BigInt::from(1);
    let mut total = BigInt::zero();
    for (w, &c) in counts.iter().enumerate() {
        if c != 0 {
            total += BigInt::from(c) * &xpow * &ypow[n - w];
        }
        xpow *= &x;
    }
    total
}

/// Precomputed data for walking `{b : Ab = 0}` through kernel coordinates.
struct KernelWalk {
    n: usize,
    dim: usize,
    /// kernel basis vectors as packed words
    basis: Vec<Vec<u64>>,
    /// row i of the Gram matrix `M = KᵀBK`, as a bit mask over kernel coords
    gram_rows: Vec<u64>,
    /// `M_ii`
    gram_diag: Vec<bool>,
    /// `(M + Mᵀ)` row i with the diagonal cleared
    sym_rows: Vec<u64>,
    b: BitMatrix,
}

impl KernelWalk {
    fn new(inst: &QsweInstance, limit: usize) -> Result<Self> {
        let kernel = nullspace_basis(&inst.a);
        let dim = kernel.cols();
        let limit = limit.min(MAX_KERNEL_DIM);
        if dim > limit {
            return Err(Error::KernelTooLarge { dim, limit });
        }
        let basis_vecs = kernel.columns();
        let b_times: Vec<_> = basis_vecs.iter().map(|k| inst.b.mul_vec(k)).collect::<Result<_>>()?;
        let mut gram_rows = vec![0u64; dim];
        for (row, k) in gram_rows.iter_mut().zip(&basis_vecs) {
            for (j, bk) in b_times.iter().enumerate() {
                if k.dot(bk) {
                    *row |= 1 << j;
                }
            }
        }
        let gram_diag: Vec<bool> = (0..dim).map(|i| gram_rows[i] >> i & 1 == 1).collect();
        let sym_rows = (0..dim)
            .map(|i| {
                let col_i = (0..dim).fold(0u64, |acc, j| acc | ((gram_rows[j] >> i & 1) << j));
                (gram_rows[i] ^ col_i) & !(1u64 << i)
            })
            .collect();
        Ok(Self {
            n: inst.n(),
            dim,
            basis: basis_vecs.iter().map(words_of).collect(),
            gram_rows,
            gram_diag,
            sym_rows,
            b: inst.b.clone(),
        })
    }

    fn form(&self, coords: u64) -> bool {
        let mut acc = 0u32;
        let mut rest = coords;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= (self.gram_rows[i] & coords).count_ones();
            rest &= rest - 1;
        }
        acc & 1 == 1
    }

    /// Signed counts per weight over the whole kernel, split into
    /// `2^split` blocks that fix the top kernel coordinates.
    fn signed_counts(&self, threads: usize) -> Vec<i64> {
        let threads = threads.max(1);
        let split = if threads == 1 {
            0
        } else {
            (usize::BITS - (threads - 1).leading_zeros()) as usize + 2
        }
        .min(self.dim);
        let blocks = 1u64 << split;
        if threads == 1 || blocks == 1 {
            let mut counts = vec![0i64; self.n + 1];
            for block in 0..blocks {
                self.walk_block(block, split, &mut counts);
            }
            return counts;
        }
        let partials: Vec<Vec<i64>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|worker| {
                    scope.spawn(move || {
                        let mut counts = vec![0i64; self.n + 1];
                        let mut block = worker;
                        while block < blocks {
                            self.walk_block(block, split, &mut counts);
                            block += threads as u64;
                        }
                        counts
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut counts = vec![0i64; self.n + 1];
        for p in partials {
            for (c, v) in counts.iter_mut().zip(p) {
                *c += v;
            }
        }
        counts
    }

    /// Gray walk over the low `dim − split` coordinates with the top `split`
    /// coordinates fixed to `block`.
    fn walk_block(&self, block: u64, split: usize, counts: &mut [i64]) {
        let low = self.dim - split;
        let mut coords = block << low;
        let nwords = self.n.div_ceil(64);
        let mut vector = vec![0u64; nwords];
        let mut rest = coords;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            xor_into(&mut vector, &self.basis[i]);
            rest &= rest - 1;
        }
        let mut odd = self.form(coords);
        let check = cfg!(debug_assertions) && self.dim <= 10;

        let tally = |vector: &[u64], odd: bool, counts: &mut [i64]| {
            let w: usize = vector.iter().map(|x| x.count_ones() as usize).sum();
            counts[w] += if odd { -1 } else { 1 };
        };
        tally(&vector, odd, counts);
        for step in 1..(1u64 << low) {
            let i = step.trailing_zeros() as usize;
            odd ^= self.gram_diag[i] ^ ((self.sym_rows[i] & coords).count_ones() & 1 == 1);
            coords ^= 1 << i;
            xor_into(&mut vector, &self.basis[i]);
            if check {
                debug_assert_eq!(odd, self.form(coords));
                debug_assert_eq!(odd, self.fresh_form(&vector));
            }
            tally(&vector, odd, counts);
        }
    }

    /// `bᵀBb` computed directly from the vector.
    fn fresh_form(&self, vector: &[u64]) -> bool {
        let mut acc = false;
        for i in 0..self.n {
            if vector[i / 64] >> (i % 64) & 1 == 1 {
                let row = self.b.row_as_words(i);
                acc ^= row.iter().zip(vector).fold(0, |s, (r, v)| s ^ (r & v).count_ones()) & 1 == 1;
            }
        }
        acc
    }
}

fn words_of(v: &crate::gf2::BitVector) -> Vec<u64> {
    let mut w = vec![0u64; v.len().div_ceil(64)];
    for i in v.ones() {
        w[i / 64] |= 1 << (i % 64);
    }
    w
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Brute force over all `2ⁿ` vectors, testing `Ab = 0` directly.
pub fn eval_naive(inst: &QsweInstance) -> Result<BigInt> {
    let n = inst.n();
    if n > NAIVE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "variable count for naive evaluation",
            size: n,
            limit: NAIVE_LIMIT,
        });
    }
    let row_word = |m: &BitMatrix, i: usize| m.row_as_words(i).first().copied().unwrap_or(0);
    let a_rows: Vec<u64> = (0..inst.m()).map(|i| row_word(&inst.a, i)).collect();
    let b_rows: Vec<u64> = (0..n).map(|i| row_word(&inst.b, i)).collect();
    let mut counts = vec![0i64; n + 1];
    for v in 0u64..(1 << n) {
        if a_rows.iter().any(|r| (r & v).count_ones() & 1 == 1) {
            continue;
        }
        let mut odd = false;
        for (i, r) in b_rows.iter().enumerate() {
            if v >> i & 1 == 1 {
                odd ^= (r & v).count_ones() & 1 == 1;
            }
        }
        counts[v.count_ones() as usize] += if odd { -1 } else { 1 };
    }
    Ok(weight_polynomial(&counts, inst.x, inst.y))
}

/// `|S| ≥ (x² + y²)^{n/2} / 2`, decided exactly as `4·S² ≥ (x² + y²)ⁿ`.
pub fn promise_holds(s: &BigInt, x: u64, y: u64, n: usize) -> bool {
    let base = BigInt::from(x) * x + BigInt::from(y) * y;
    s * s * 4u32 >= num_traits::pow(base, n)
}

pub fn sign_with_promise(inst: &QsweInstance) -> Result<Sign> {
    sign_with_promise_opts(inst, &EvalOptions::default())
}

pub fn sign_with_promise_opts(inst: &QsweInstance, opts: &EvalOptions) -> Result<Sign> {
    decide_sign(&eval_with(inst, opts)?, inst.x, inst.y, inst.n())
}

/// Sign of an already computed `S`, or `PromiseViolated` below the bound.
pub fn decide_sign(s: &BigInt, x: u64, y: u64, n: usize) -> Result<Sign> {
    if !promise_holds(s, x, y, n) {
        return Err(Error::PromiseViolated { value: s.to_string() });
    }
    Ok(if s.is_negative() { Sign::Minus } else { Sign::Plus })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeTag {
    General,
    /// `(A, lwtr(A))` with `A` square and `diag(A) = I`.
    P3,
    /// `([C; Cᵀ], lwtr(C))` with `C` square and `diag(C) = I`.
    P4,
}

pub fn classify_shape(inst: &QsweInstance) -> ShapeTag {
    if is_p3(inst) {
        ShapeTag::P3
    } else if p4_block(inst).is_some() {
        ShapeTag::P4
    } else {
        ShapeTag::General
    }
}

fn is_p3(inst: &QsweInstance) -> bool {
    inst.a.diagonal_is_identity() && lwtr(&inst.a).is_ok_and(|l| l == inst.b)
}

/// The `C` block of a P4-shaped instance.
pub fn p4_block(inst: &QsweInstance) -> Option<BitMatrix> {
    let n = inst.n();
    if inst.m() != 2 * n {
        return None;
    }
    let c = inst.a.select_rows(0..n);
    let lower = inst.a.select_rows(n..2 * n);
    (lower == c.transpose() && c.diagonal_is_identity() && lwtr(&c).is_ok_and(|l| l == inst.b)).then_some(c)
}
