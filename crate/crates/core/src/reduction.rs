//! From real circuits to signed weight enumerators and back.
//!
//! For a circuit of real gates, `(k² + l²)^{N/2}·U` expands into
//!
//! `Σ_a (−1)^{aᵀ(L + D)a} · l^{|a|} · k^{N−|a|} · σ̃_{Ha}`
//!
//! where column j of `H` is gate j's Pauli index, `L = lwtr(Hᵀ B_sym H)`, and
//! the diagonal `D` marks gates oriented as `k − l·σ̃`. Bit j of `a` selects
//! the `σ̃` term of gate j (gate 1 is bit 0). Selected factors carry `l`, so the
//! resulting instances have `x = l` and `y = k`.

use num_bigint::BigInt;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::enumerator::QsweInstance;
use crate::error::{Error, Result};
use crate::gf2::{factor_rank, full_rank_replacement, lwtr, rank, row_reduce, BitMatrix, BitVector};
use crate::pauli::{symplectic_gram, PauliIndex, SignedPauli, DEFAULT_DENSE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionData {
    /// `2n × N`, column j is gate j's index.
    pub h: BitMatrix,
    /// `lwtr(Hᵀ B_sym H)`, `N × N`.
    pub lower: BitMatrix,
    /// Diagonal, `D_jj = 1` iff gate j is real but not convention-conforming.
    pub diag: BitMatrix,
}

impl ExpansionData {
    pub fn num_gates(&self) -> usize {
        self.h.cols()
    }

    pub fn num_qubits(&self) -> usize {
        self.h.rows() / 2
    }

    /// `L + D`, the sign matrix of every instance built from this expansion.
    pub fn sign_matrix(&self) -> BitMatrix {
        self.lower.add(&self.diag).expect("L and D share a shape")
    }

    pub fn split_rows(&self) -> SplitRows {
        let n = self.num_qubits();
        SplitRows {
            h0: self.h.select_rows((0..n).map(|q| 2 * q)),
            h1: self.h.select_rows((0..n).map(|q| 2 * q + 1)),
        }
    }

    pub fn has_nonconforming(&self) -> bool {
        !self.diag.is_zero()
    }
}

/// Even rows (z-parts) and odd rows (x-parts) of `H`, counting from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRows {
    pub h0: BitMatrix,
    pub h1: BitMatrix,
}

pub fn expand(c: &Circuit) -> Result<ExpansionData> {
    let n = c.num_qubits();
    let big_n = c.len();
    let mut h = BitMatrix::zeros(2 * n, big_n);
    let mut diag = BitMatrix::zeros(big_n, big_n);
    for (j, g) in c.gates().iter().enumerate() {
        match g.kind() {
            GateKind::Complex => return Err(Error::ComplexGate { gate: j + 1 }),
            GateKind::RealNonConforming => diag.set(j, j, true),
            GateKind::RealConforming => {}
        }
        for i in g.index.bits().ones() {
            h.set(i, j, true);
        }
    }
    let gram = symplectic_gram(&h)?;
    if !gram.diagonal_is_identity() && big_n > 0 {
        return Err(Error::internal("expand", "diag(Hᵀ B_sym H) is not the identity"));
    }
    Ok(ExpansionData {
        lower: lwtr(&gram)?,
        h,
        diag,
    })
}

/// Instance whose value is `(k² + l²)^{N/2}·⟨0…0|U|0…0⟩`: a term survives
/// iff `σ_{Ha}` has no X or Y factor, i.e. `H1·a = 0`.
pub fn amplitude_instance(c: &Circuit) -> Result<QsweInstance> {
    let e = expand(c)?;
    let s = e.split_rows();
    QsweInstance::new(s.h1, e.sign_matrix(), c.l(), c.k())
}

/// Instance whose value is `(k² + l²)^{N/2}·tr U / 2ⁿ`: only `σ̃_0` has
/// nonzero trace, so the constraints are `H0·a = 0` and `H1·a = 0`.
pub fn trace_instance(c: &Circuit) -> Result<QsweInstance> {
    let e = expand(c)?;
    let s = e.split_rows();
    QsweInstance::new(s.h0.vstack(&s.h1)?, e.sign_matrix(), c.l(), c.k())
}

/// Result of [`canonicalize_p3_detailed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub instance: QsweInstance,
    /// The z-part matrix had to be replaced by a full-rank one.
    pub replaced: bool,
    /// The row space of `H1` was compressed first because there were fewer
    /// gates than qubits.
    pub compressed: bool,
    /// z-part rows after any compression, before replacement.
    pub h0: BitMatrix,
    /// x-part rows after any compression.
    pub h1: BitMatrix,
    /// Full-rank z-part; equal to `h0` unless `replaced`.
    pub h2: BitMatrix,
}

pub fn canonicalize_p3(c: &Circuit) -> Result<QsweInstance> {
    canonicalize_p3_detailed(c).map(|f| f.instance)
}

/// Amplitude instance rewritten as `(A', lwtr(A'))` with `A' = H2ᵀ·H1` and
/// `diag(A') = I`.
///
/// With `H2` of full row rank, `H2ᵀ` is injective, so `A'a = 0` iff `H1a = 0`.
/// When `H0` is rank deficient it is replaced via
/// [`full_rank_replacement`], which keeps the lower triangle that fixes the
/// signs. Circuits with fewer gates than qubits are first moved to a basis in
/// which `H1` has only `rank(H1)` nonzero rows: `(H0, H1) ↦ (U⁻ᵀH0, U·H1)`
/// keeps `H0ᵀH1` and the kernel of `H1` for any invertible `U`.
pub fn canonicalize_p3_detailed(c: &Circuit) -> Result<CanonicalForm> {
    let e = expand(c)?;
    if let Some(j) = (0..e.num_gates()).find(|&j| e.diag.get(j, j)) {
        return Err(Error::NonConformingGate { gate: j + 1 });
    }
    let SplitRows { mut h0, mut h1 } = e.split_rows();
    let mut compressed = false;
    if h0.cols() < h0.rows() && rank(&h0) < h0.rows() {
        (h0, h1) = compress_rows(&h0, &h1)?;
        compressed = true;
    }
    let replaced = rank(&h0) < h0.rows();
    let h2 = if replaced {
        full_rank_replacement(&h0, &h1)?
    } else {
        h0.clone()
    };
    let a = h2.transpose().mul(&h1)?;
    if !a.diagonal_is_identity() {
        return Err(Error::internal("canonicalize_p3", "diag(H2ᵀH1) is not the identity"));
    }
    let b = lwtr(&a)?;
    if b != e.lower {
        return Err(Error::internal("canonicalize_p3", "sign matrix changed"));
    }
    Ok(CanonicalForm {
        instance: QsweInstance::new(a, b, c.l(), c.k())?,
        replaced,
        compressed,
        h0,
        h1,
        h2,
    })
}

fn compress_rows(h0: &BitMatrix, h1: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    let ef = row_reduce(h1);
    let inverse = row_reduce(&ef.transform).transform;
    let new_h0 = inverse.transpose().mul(h0)?;
    Ok((new_h0.select_rows(0..ef.rank), ef.reduced.select_rows(0..ef.rank)))
}

fn check_unit_diagonal(m: &BitMatrix, op: &'static str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::pre(
            op,
            format!("matrix is {}x{}, not square", m.rows(), m.cols()),
        ));
    }
    if let Some(i) = (0..m.rows()).find(|&i| !m.get(i, i)) {
        return Err(Error::pre(op, format!("diagonal entry {i} is zero")));
    }
    Ok(())
}

/// Circuit on N qubits whose amplitude instance has `H0 = I`, `H1 = A`.
pub fn p3_to_circuit(a: &BitMatrix, k: u64, l: u64) -> Result<Circuit> {
    check_unit_diagonal(a, "p3_to_circuit")?;
    let n = a.rows();
    let gates = (0..n)
        .map(|j| Gate::with_default_orientation(PauliIndex::from_parts(&BitVector::unit(n, j), &a.col(j))))
        .collect();
    Circuit::new(n, k, l, gates)
}

/// Circuit on `rank(C)` qubits whose trace instance has `H0 = Xᵀ`, `H1 = Yᵀ`
/// for the rank factorization `C = X·Yᵀ`.
pub fn p4_to_circuit(c: &BitMatrix, k: u64, l: u64) -> Result<Circuit> {
    check_unit_diagonal(c, "p4_to_circuit")?;
    let (x, y) = factor_rank(c);
    let r = x.cols();
    let gates = (0..c.rows())
        .map(|j| Gate::with_default_orientation(PauliIndex::from_parts(&x.row(j), &y.row(j))))
        .collect();
    Circuit::new(r, k, l, gates)
}

/// `(A, lwtr(A), x, y)`.
pub fn p3_instance(a: &BitMatrix, x: u64, y: u64) -> Result<QsweInstance> {
    QsweInstance::new(a.clone(), lwtr(a)?, x, y)
}

/// `([C; Cᵀ], lwtr(C), x, y)`.
pub fn p4_instance(c: &BitMatrix, x: u64, y: u64) -> Result<QsweInstance> {
    QsweInstance::new(c.vstack(&c.transpose())?, lwtr(c)?, x, y)
}

/// The expansion summed term by term as a dense integer matrix (row-major,
/// `2ⁿ × 2ⁿ`). Equals the unnormalized real circuit unitary.
pub fn path_sum_matrix(e: &ExpansionData, k: u64, l: u64) -> Result<Vec<BigInt>> {
    let n = e.num_qubits();
    let big_n = e.num_gates();
    if n > DEFAULT_DENSE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "qubit count for dense matrix",
            size: n,
            limit: DEFAULT_DENSE_LIMIT,
        });
    }
    if big_n >= 63 {
        return Err(Error::LimitExceeded {
            what: "gate count for term enumeration",
            size: big_n,
            limit: 62,
        });
    }
    let dim = 1usize << n;
    let signs = e.sign_matrix();
    let mut out = vec![BigInt::from(0); dim * dim];
    let kk = BigInt::from(k);
    let ll = BigInt::from(l);
    for bits in 0u64..(1 << big_n) {
        let a = BitVector::from_word(big_n, bits);
        let odd = a.dot(&signs.mul_vec(&a)?);
        let w = a.weight();
        let mut coeff = num_traits::pow(ll.clone(), w) * num_traits::pow(kk.clone(), big_n - w);
        if odd {
            coeff = -coeff;
        }
        let index = PauliIndex::from_bits(e.h.mul_vec(&a)?)?;
        let m = SignedPauli::positive(index).to_matrix()?;
        for r in 0..dim {
            for col in 0..dim {
                match m.get(r, col) {
                    0 => {}
                    1 => out[r * dim + col] += &coeff,
                    _ => out[r * dim + col] -= &coeff,
                }
            }
        }
    }
    Ok(out)
}
