//! Circuits of Pauli rotations sharing one angle.
//!
//! A gate with Pauli index `b` and orientation `ε` has the value
//! `(k + ε·i·l·σ_b) / √(k² + l²)`. The circuit unitary is `G_N ⋯ G_1` with
//! `G_1` listed first.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliIndex, Sign, DEFAULT_DENSE_LIMIT};
use crate::sim::{circuit_unitary_with_limit, ScaledMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub index: PauliIndex,
    pub epsilon: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Even number of σ_y factors; the gate has complex entries.
    Complex,
    /// Real and equal to `(k + l·σ̃_b)/√(k²+l²)`.
    RealConforming,
    /// Real and equal to `(k − l·σ̃_b)/√(k²+l²)`.
    RealNonConforming,
}

impl Gate {
    pub fn new(index: PauliIndex, epsilon: Sign) -> Self {
        Self { index, epsilon }
    }

    /// Orientation used when none is given: the conforming one for real
    /// gates, `+` for complex gates.
    pub fn default_orientation(index: &PauliIndex) -> Sign {
        conforming_orientation(index).unwrap_or(Sign::Plus)
    }

    pub fn with_default_orientation(index: PauliIndex) -> Self {
        let epsilon = Self::default_orientation(&index);
        Self { index, epsilon }
    }

    pub fn num_qubits(&self) -> usize {
        self.index.num_qubits()
    }

    pub fn is_real(&self) -> bool {
        self.index.y_count() % 2 == 1
    }

    pub fn kind(&self) -> GateKind {
        match conforming_orientation(&self.index) {
            None => GateKind::Complex,
            Some(e) if e == self.epsilon => GateKind::RealConforming,
            Some(_) => GateKind::RealNonConforming,
        }
    }
}

/// For a real gate, the orientation that turns `k + ε·i·l·σ_b` into
/// `k + l·σ̃_b`: `σ_b = i^{|b|_y} σ̃_b`, so the coefficient of `σ̃_b` is
/// `ε·l·i^{|b|_y + 1}`, which is `−ε·l` for `|b|_y ≡ 1` and `ε·l` for
/// `|b|_y ≡ 3 (mod 4)`.
pub fn conforming_orientation(index: &PauliIndex) -> Option<Sign> {
    match index.y_count() % 4 {
        1 => Some(Sign::Minus),
        3 => Some(Sign::Plus),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    k: u64,
    l: u64,
}

impl Circuit {
    pub fn new(num_qubits: usize, k: u64, l: u64, gates: Vec<Gate>) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::pre(
                "Circuit",
                format!("k and l must be positive, got k={k} l={l}"),
            ));
        }
        if let Some((i, g)) = gates.iter().enumerate().find(|(_, g)| g.num_qubits() != num_qubits) {
            return Err(Error::dim(
                "Circuit",
                format!(
                    "gate #{} acts on {} qubits, circuit has {num_qubits}",
                    i + 1,
                    g.num_qubits()
                ),
            ));
        }
        Ok(Self {
            num_qubits,
            gates,
            k,
            l,
        })
    }

    pub fn empty(num_qubits: usize, k: u64, l: u64) -> Result<Self> {
        Self::new(num_qubits, k, l, Vec::new())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// `k² + l²`, the squared normalization of every gate.
    pub fn norm_squared(&self) -> BigInt {
        BigInt::from(self.k) * self.k + BigInt::from(self.l) * self.l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircuitClass {
    RealConforming,
    RealNonConforming,
    Complex,
}

impl fmt::Display for CircuitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitClass::RealConforming => "REAL_CONFORMING",
            CircuitClass::RealNonConforming => "REAL_NONCONFORMING",
            CircuitClass::Complex => "COMPLEX",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealityReport {
    pub gates: Vec<GateKind>,
    pub class: CircuitClass,
}

pub fn validate_real(c: &Circuit) -> RealityReport {
    let gates: Vec<GateKind> = c.gates.iter().map(Gate::kind).collect();
    let class = if gates.contains(&GateKind::Complex) {
        CircuitClass::Complex
    } else if gates.contains(&GateKind::RealNonConforming) {
        CircuitClass::RealNonConforming
    } else {
        CircuitClass::RealConforming
    };
    RealityReport { gates, class }
}

/// Simulates `c` by a real circuit on one extra qubit, placed at position 0.
///
/// Each gate becomes `G' = Re(G) − i·σ_y⁽⁰⁾·Im(G)`. Real gates pass through
/// with an identity on the new qubit. A complex gate `k + ε·i·l·σ_b` has
/// `Im(G) = ε·l·σ_b`, so `G' = k + (−ε)·i·l·(σ_y ⊗ σ_b)`: its index gains a Y
/// on qubit 0 and its orientation flips. Every output gate is real.
pub fn embed_real(c: &Circuit) -> Circuit {
    let gates = c
        .gates
        .iter()
        .map(|g| {
            if g.is_real() {
                Gate::new(g.index.prepend(Pauli::I), g.epsilon)
            } else {
                Gate::new(g.index.prepend(Pauli::Y), -g.epsilon)
            }
        })
        .collect();
    Circuit {
        num_qubits: c.num_qubits + 1,
        gates,
        k: c.k,
        l: c.l,
    }
}

/// Checks `R·U(G') = U(G)·R` for `G' = embed_real(c)` at the unnormalized
/// level, where `R : (α|0⟩₀ + β|1⟩₀)|b⟩ ↦ (α + iβ)|b⟩`, and that `U(G')` is
/// real.
pub fn r_map_check(c: &Circuit) -> Result<bool> {
    r_map_check_with_limit(c, DEFAULT_DENSE_LIMIT)
}

pub fn r_map_check_with_limit(c: &Circuit, limit: usize) -> Result<bool> {
    if c.num_qubits + 1 > limit {
        return Err(Error::LimitExceeded {
            what: "qubit count of the embedded circuit",
            size: c.num_qubits + 1,
            limit,
        });
    }
    let embedded = embed_real(c);
    let u = circuit_unitary_with_limit(c, limit)?;
    let u_real = circuit_unitary_with_limit(&embedded, limit)?;
    if !u_real.is_real() {
        return Ok(false);
    }
    Ok(intertwines(&u, &u_real))
}

fn intertwines(u: &ScaledMatrix, u_real: &ScaledMatrix) -> bool {
    let dim = u.dim();
    let i = Complex::new(BigInt::zero(), BigInt::one());
    for b in 0..dim {
        for col in 0..2 * dim {
            let lhs = u_real.get(b, col) + &i * u_real.get(dim + b, col);
            let rhs = if col < dim {
                u.get(b, col).clone()
            } else {
                &i * u.get(b, col - dim)
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}
