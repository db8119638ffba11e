//! Signed Pauli products in the symplectic 0-1 representation.
//!
//! A Pauli product on n qubits is a 2n-bit vector with one `(z, x)` pair per
//! qubit: `00 = I`, `01 = X`, `11 = Y`, `10 = Z`. Signs are tracked for the
//! real-normalized operators `σ̃_b = (−i)^{|b|_y} σ_b`, which are signed
//! permutation matrices, so no complex phase ever appears.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{lwtr, BitMatrix, BitVector};

/// Largest qubit count for which dense `2ⁿ × 2ⁿ` matrices are built by default.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `(z, x)` bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Y => (true, true),
            Pauli::Z => (true, false),
        }
    }

    pub fn from_bits(z: bool, x: bool) -> Self {
        match (z, x) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, true) => Pauli::Y,
            (true, false) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliIndex {
    bits: BitVector,
}

impl PauliIndex {
    pub fn identity(n: usize) -> Self {
        Self {
            bits: BitVector::zeros(2 * n),
        }
    }

    pub fn from_bits(bits: BitVector) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::dim("PauliIndex", format!("bit length {} is odd", bits.len())));
        }
        Ok(Self { bits })
    }

    pub fn from_paulis(ps: &[Pauli]) -> Self {
        let mut bits = BitVector::zeros(2 * ps.len());
        for (q, p) in ps.iter().enumerate() {
            let (z, x) = p.bits();
            bits.set(2 * q, z);
            bits.set(2 * q + 1, x);
        }
        Self { bits }
    }

    /// Builds the index from separate z- and x-parts of equal length.
    pub fn from_parts(z: &BitVector, x: &BitVector) -> Self {
        assert_eq!(z.len(), x.len());
        let mut bits = BitVector::zeros(2 * z.len());
        for q in 0..z.len() {
            bits.set(2 * q, z.get(q));
            bits.set(2 * q + 1, x.get(q));
        }
        Self { bits }
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn pauli(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.bits.get(2 * q), self.bits.get(2 * q + 1))
    }

    pub fn paulis(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.num_qubits()).map(move |q| self.pauli(q))
    }

    pub fn z_part(&self) -> BitVector {
        BitVector::from_bits(&(0..self.num_qubits()).map(|q| self.bits.get(2 * q)).collect::<Vec<_>>())
    }

    pub fn x_part(&self) -> BitVector {
        BitVector::from_bits(
            &(0..self.num_qubits())
                .map(|q| self.bits.get(2 * q + 1))
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.bits.is_zero()
    }

    /// Number of σ_y factors.
    pub fn y_count(&self) -> usize {
        self.paulis().filter(|&p| p == Pauli::Y).count()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.paulis().filter(|&p| p != Pauli::I).count()
    }

    /// `bᵀ B_sym b'` with `B_sym` block diagonal in `[[0,1],[0,0]]`, i.e. the
    /// parity of `Σ z_q · x'_q`.
    pub fn quad_form(&self, other: &PauliIndex) -> Result<bool> {
        self.check_same(other, "quad_form")?;
        Ok(self.z_part().dot(&other.x_part()))
    }

    pub fn xor(&self, other: &PauliIndex) -> Result<PauliIndex> {
        self.check_same(other, "pauli_xor")?;
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Ok(PauliIndex { bits })
    }

    /// Prepends `p` as a new qubit 0.
    pub fn prepend(&self, p: Pauli) -> PauliIndex {
        let head = PauliIndex::from_paulis(&[p]);
        PauliIndex {
            bits: head.bits.concat(&self.bits),
        }
    }

    fn check_same(&self, other: &PauliIndex, op: &'static str) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::dim(
                op,
                format!("{} vs {} qubits", self.num_qubits(), other.num_qubits()),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.paulis() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliIndex({self})")
    }
}

impl FromStr for PauliIndex {
    type Err = Error;

    /// Leftmost character is qubit 0.
    fn from_str(s: &str) -> Result<Self> {
        let ps = s
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    column: i + 1,
                    msg: format!("'{c}' is not one of I, X, Y, Z"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliIndex::from_paulis(&ps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_negative() != rhs.is_negative())
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_parity(!self.is_negative())
    }
}

/// `sign · σ̃_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub index: PauliIndex,
    pub sign: Sign,
}

impl SignedPauli {
    pub fn new(index: PauliIndex, sign: Sign) -> Self {
        Self { index, sign }
    }

    pub fn positive(index: PauliIndex) -> Self {
        Self::new(index, Sign::Plus)
    }

    pub fn identity(n: usize) -> Self {
        Self::positive(PauliIndex::identity(n))
    }

    /// `σ̃_p σ̃_q = (−1)^{pᵀ B_sym q} σ̃_{p+q}`.
    pub fn mul(&self, other: &SignedPauli) -> Result<SignedPauli> {
        let flip = self.index.quad_form(&other.index)?;
        Ok(SignedPauli {
            index: self.index.xor(&other.index)?,
            sign: self.sign * other.sign * Sign::from_parity(flip),
        })
    }

    pub fn to_matrix(&self) -> Result<SignMatrix> {
        self.to_matrix_with_limit(DEFAULT_DENSE_LIMIT)
    }

    /// Dense `2ⁿ × 2ⁿ` matrix, built as the Kronecker product of the
    /// single-qubit factors `I`, `σ_x`, `σ_z` and `−iσ_y = [[0,−1],[1,0]]`.
    /// Qubit 0 is the most significant bit of the basis index.
    pub fn to_matrix_with_limit(&self, limit: usize) -> Result<SignMatrix> {
        let n = self.index.num_qubits();
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "qubit count for dense matrix",
                size: n,
                limit,
            });
        }
        let mut m = SignMatrix::identity(1);
        for p in self.index.paulis() {
            let factor = match p {
                Pauli::I => [[1, 0], [0, 1]],
                Pauli::X => [[0, 1], [1, 0]],
                Pauli::Y => [[0, -1], [1, 0]],
                Pauli::Z => [[1, 0], [0, -1]],
            };
            m = m.kron2(factor);
        }
        if self.sign.is_negative() {
            for e in &mut m.entries {
                *e = -*e;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign.as_char(), self.index)
    }
}

/// Dense integer matrix with entries in {−1, 0, 1}, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    dim: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            entries.extend_from_slice(r);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.dim + c]
    }

    fn kron2(&self, f: [[i8; 2]; 2]) -> SignMatrix {
        let d = self.dim * 2;
        let mut entries = vec![0; d * d];
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = self.get(r, c);
                if v == 0 {
                    continue;
                }
                for (a, row) in f.iter().enumerate() {
                    for (b, &w) in row.iter().enumerate() {
                        entries[(2 * r + a) * d + 2 * c + b] = v * w;
                    }
                }
            }
        }
        SignMatrix { dim: d, entries }
    }

    /// Exact product. Products of signed permutation matrices stay in
    /// {−1, 0, 1}; anything else is a caller error and panics.
    pub fn matmul(&self, other: &SignMatrix) -> SignMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![0i8; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..d {
                    let v = i32::from(entries[r * d + c]) + i32::from(a) * i32::from(other.get(k, c));
                    entries[r * d + c] = i8::try_from(v).expect("entry left {-1,0,1}");
                }
            }
        }
        SignMatrix { dim: d, entries }
    }
}

/// `Hᵀ B_sym H` for a `2n × N` matrix whose columns are Pauli indices;
/// entry `(i, j)` is the quadratic form of columns i and j.
pub fn symplectic_gram(h: &BitMatrix) -> Result<BitMatrix> {
    if !h.rows().is_multiple_of(2) {
        return Err(Error::dim(
            "symplectic_gram",
            format!("H has {} rows, expected an even count", h.rows()),
        ));
    }
    let n = h.rows() / 2;
    let z = h.select_rows((0..n).map(|q| 2 * q));
    let x = h.select_rows((0..n).map(|q| 2 * q + 1));
    z.transpose().mul(&x)
}

/// Sign exponent `aᵀ · lwtr(Hᵀ B_sym H) · a` of the path-sum term selected by
/// `a`: the sign of `σ̃_{b_N}^{a_N} ⋯ σ̃_{b_1}^{a_1}` relative to `σ̃_{Ha}`.
pub fn expansion_sign(h: &BitMatrix, a: &BitVector) -> Result<bool> {
    if h.cols() != a.len() {
        return Err(Error::dim(
            "expansion_sign",
            format!("H has {} columns but a has length {}", h.cols(), a.len()),
        ));
    }
    let l = lwtr(&symplectic_gram(h)?)?;
    let la = l.mul_vec(a)?;
    Ok(a.dot(&la))
}
