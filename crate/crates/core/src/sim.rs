//! Exact dense simulation over the Gaussian integers.
//!
//! Every gate is kept unnormalized as `k·I + ε·i·l·σ_b`, so a circuit of N
//! gates yields an integer matrix `M` with `U = M / (k² + l²)^{N/2}`. No square
//! root or floating-point value is ever formed. Basis index bit `n − 1 − q`
//! holds qubit q, so qubit 0 is the most significant bit.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliIndex, Sign, DEFAULT_DENSE_LIMIT};

pub type GaussianInt = Complex<BigInt>;
pub type ExactRational = BigRational;

/// Integer matrix `entries` standing for `entries / (k² + l²)^{scale/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledMatrix {
    dim: usize,
    entries: Vec<GaussianInt>,
    scale: usize,
    norm_squared: BigInt,
}

impl ScaledMatrix {
    fn identity(dim: usize, norm_squared: BigInt) -> Self {
        let mut entries = vec![GaussianInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = GaussianInt::one();
        }
        Self {
            dim,
            entries,
            scale: 0,
            norm_squared,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of gate factors N.
    pub fn scale(&self) -> usize {
        self.scale
    }

    /// `k² + l²`.
    pub fn norm_squared(&self) -> &BigInt {
        &self.norm_squared
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianInt {
        &self.entries[r * self.dim + c]
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.im.is_zero())
    }

    pub fn trace(&self) -> GaussianInt {
        (0..self.dim).fold(GaussianInt::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `(k² + l²)^N`, the squared denominator.
    pub fn denominator_squared(&self) -> BigInt {
        num_traits::pow(self.norm_squared.clone(), self.scale)
    }

    /// Left-multiplies by the unnormalized gate `k + ε·i·l·σ_b`.
    fn apply_gate(&mut self, index: &PauliIndex, epsilon: Sign, k: &BigInt, l: &BigInt) {
        let n = index.num_qubits();
        let dim = self.dim;
        let mut flip = 0usize;
        for (q, p) in index.paulis().enumerate() {
            if matches!(p, Pauli::X | Pauli::Y) {
                flip |= 1 << (n - 1 - q);
            }
        }
        let signed_l = if epsilon.is_negative() { -l.clone() } else { l.clone() };
        let mut out = Vec::with_capacity(self.entries.len());
        for r in 0..dim {
            // row r of σ_b·M is phase(src)·(row src of M), src = r ⊕ flip
            let src = r ^ flip;
            let quarter_turns = (column_phase(index, src) + 1) % 4;
            for c in 0..dim {
                let moved = times_i_pow(&self.entries[src * dim + c], quarter_turns);
                out.push(&self.entries[r * dim + c] * k + moved * &signed_l);
            }
        }
        self.entries = out;
        self.scale += 1;
    }
}

/// Power of `i` picked up by `σ_b |c⟩`, from the single-qubit rules
/// `σ_y|0⟩ = i|1⟩`, `σ_y|1⟩ = −i|0⟩`, `σ_z|1⟩ = −|1⟩`.
fn column_phase(index: &PauliIndex, c: usize) -> u32 {
    let n = index.num_qubits();
    let mut e = 0u32;
    for (q, p) in index.paulis().enumerate() {
        let bit = (c >> (n - 1 - q)) & 1 == 1;
        e += match (p, bit) {
            (Pauli::Y, false) => 1,
            (Pauli::Y, true) => 3,
            (Pauli::Z, true) => 2,
            _ => 0,
        };
    }
    e % 4
}

fn times_i_pow(z: &GaussianInt, p: u32) -> GaussianInt {
    match p % 4 {
        0 => z.clone(),
        1 => Complex::new(-z.im.clone(), z.re.clone()),
        2 => Complex::new(-z.re.clone(), -z.im.clone()),
        _ => Complex::new(z.im.clone(), -z.re.clone()),
    }
}

fn check_limit(c: &Circuit, limit: usize) -> Result<()> {
    if c.num_qubits() > limit {
        return Err(Error::LimitExceeded {
            what: "qubit count for dense simulation",
            size: c.num_qubits(),
            limit,
        });
    }
    Ok(())
}

pub fn circuit_unitary(c: &Circuit) -> Result<ScaledMatrix> {
    circuit_unitary_with_limit(c, DEFAULT_DENSE_LIMIT)
}

/// Unnormalized `G_N ⋯ G_1` with `scale = N`.
pub fn circuit_unitary_with_limit(c: &Circuit, limit: usize) -> Result<ScaledMatrix> {
    check_limit(c, limit)?;
    let k = BigInt::from(c.k());
    let l = BigInt::from(c.l());
    let mut m = ScaledMatrix::identity(1 << c.num_qubits(), c.norm_squared());
    for g in c.gates() {
        m.apply_gate(&g.index, g.epsilon, &k, &l);
    }
    Ok(m)
}

fn abs_squared(z: &GaussianInt) -> BigInt {
    &z.re * &z.re + &z.im * &z.im
}

fn sign_of_real(z: &GaussianInt, what: &'static str) -> Result<Sign> {
    if !z.im.is_zero() {
        return Err(Error::pre(what, format!("value {z} is not real")));
    }
    Ok(if z.re.is_negative() { Sign::Minus } else { Sign::Plus })
}

/// `⟨0…0|M|0…0⟩` with its scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    pub value: GaussianInt,
    pub scale: usize,
    pub norm_squared: BigInt,
}

impl Amplitude {
    /// `|⟨0…0|U|0…0⟩| ≥ 1/2`, decided as `4·|value|² ≥ (k² + l²)^N`.
    pub fn promise_holds(&self) -> bool {
        abs_squared(&self.value) * 4u32 >= num_traits::pow(self.norm_squared.clone(), self.scale)
    }

    /// Sign of a real amplitude under the promise.
    pub fn sign(&self) -> Result<Sign> {
        if !self.promise_holds() {
            return Err(Error::PromiseViolated {
                value: self.value.to_string(),
            });
        }
        sign_of_real(&self.value, "amplitude sign")
    }
}

pub fn amplitude00(c: &Circuit) -> Result<Amplitude> {
    let m = circuit_unitary(c)?;
    Ok(Amplitude {
        value: m.get(0, 0).clone(),
        scale: m.scale,
        norm_squared: m.norm_squared,
    })
}

/// `tr M` together with the scale and the qubit count; the normalized trace
/// is `value / (2ⁿ·(k² + l²)^{N/2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub value: GaussianInt,
    pub scale: usize,
    pub num_qubits: usize,
    pub norm_squared: BigInt,
}

impl Trace {
    /// `|tr U / 2ⁿ| ≥ 1/2`, decided as `4·|tr M|² ≥ 4ⁿ·(k² + l²)^N`.
    pub fn promise_holds(&self) -> bool {
        let four_n = BigInt::one() << (2 * self.num_qubits);
        abs_squared(&self.value) * 4u32 >= four_n * num_traits::pow(self.norm_squared.clone(), self.scale)
    }

    pub fn sign(&self) -> Result<Sign> {
        if !self.promise_holds() {
            return Err(Error::PromiseViolated {
                value: self.value.to_string(),
            });
        }
        sign_of_real(&self.value, "trace sign")
    }

    /// `tr M / 2ⁿ` when both parts are divisible by `2ⁿ`.
    pub fn divided(&self) -> Option<GaussianInt> {
        let d = BigInt::one() << self.num_qubits;
        let (qr, rr) = self.value.re.div_rem(&d);
        let (qi, ri) = self.value.im.div_rem(&d);
        (rr.is_zero() && ri.is_zero()).then(|| Complex::new(qr, qi))
    }
}

pub fn normalized_trace(c: &Circuit) -> Result<Trace> {
    let m = circuit_unitary(c)?;
    Ok(Trace {
        value: m.trace(),
        scale: m.scale,
        num_qubits: c.num_qubits(),
        norm_squared: m.norm_squared,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// All qubits start in |0⟩.
    Qram,
    /// Qubit 0 starts in |0⟩, the others in a uniformly random basis state.
    Q1ram,
}

/// Probability that measuring qubit 0 after the circuit yields 1.
pub fn prob_first_qubit_one(c: &Circuit, model: Model) -> Result<ExactRational> {
    if c.num_qubits() == 0 {
        return Err(Error::pre("prob_first_qubit_one", "circuit has no qubits"));
    }
    let m = circuit_unitary(c)?;
    let half = m.dim / 2;
    let columns = match model {
        Model::Qram => 0..1,
        Model::Q1ram => 0..half,
    };
    let ncols = columns.len();
    let mut num = BigInt::zero();
    for col in columns {
        for s in half..m.dim {
            num += abs_squared(m.get(s, col));
        }
    }
    let den = m.denominator_squared() * BigInt::from(ncols);
    Ok(BigRational::new(num, den))
}

/// Sign of `2p − 1` under the promise `|2p − 1| ≥ 1/2`.
pub fn solve_probability_sign(p: &ExactRational) -> Result<Sign> {
    let bias = p * BigInt::from(2) - BigRational::one();
    if bias.abs() * BigInt::from(2) < BigRational::one() {
        return Err(Error::PromiseViolated {
            value: format!("2p-1 = {bias}"),
        });
    }
    Ok(if bias.is_negative() { Sign::Minus } else { Sign::Plus })
}

/// `a`, `bi` or `a+bi` / `a-bi`.
pub fn format_gaussian(z: &GaussianInt) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        (false, false) if z.im.is_negative() => format!("{}-{}i", z.re, -&z.im),
        (false, false) => format!("{}+{}i", z.re, z.im),
    }
}

/// `r^N` when `k² + l² = r²`, otherwise `sqrt(k² + l²)^N`.
fn format_scale(norm_squared: &BigInt, scale: usize) -> String {
    let r = norm_squared.sqrt();
    if &r * &r == *norm_squared {
        format!("{r}^{scale}")
    } else {
        format!("sqrt({norm_squared})^{scale}")
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / {}",
            format_gaussian(&self.value),
            format_scale(&self.norm_squared, self.scale)
        )
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / (2^{} * {})",
            format_gaussian(&self.value),
            self.num_qubits,
            format_scale(&self.norm_squared, self.scale)
        )
    }
}
