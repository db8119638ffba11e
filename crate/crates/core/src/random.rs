//! Seeded generators for circuits, matrices and instances.
//!
//! All generators take a caller-owned RNG; [`rng`] builds the ChaCha8 stream
//! used throughout so that a seed reproduces the same corpus everywhere.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::enumerator::QsweInstance;
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{Pauli, PauliIndex, Sign};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
const NON_Y: [Pauli; 3] = [Pauli::I, Pauli::X, Pauli::Z];

pub fn random_pauli_index<R: Rng>(rng: &mut R, n: usize) -> PauliIndex {
    let ps: Vec<Pauli> = (0..n).map(|_| *PAULIS.choose(rng).unwrap()).collect();
    PauliIndex::from_paulis(&ps)
}

/// Index with an odd number of Y factors: each qubit is drawn uniformly, and
/// if the Y count comes out even one random qubit is toggled into or out of Y.
///
/// Panics for `n = 0`, where no such index exists.
pub fn random_real_index<R: Rng>(rng: &mut R, n: usize) -> PauliIndex {
    assert!(n > 0, "a real gate needs at least one qubit");
    let mut ps: Vec<Pauli> = (0..n).map(|_| *PAULIS.choose(rng).unwrap()).collect();
    if ps.iter().filter(|&&p| p == Pauli::Y).count() % 2 == 0 {
        let q = rng.gen_range(0..n);
        ps[q] = if ps[q] == Pauli::Y {
            *NON_Y.choose(rng).unwrap()
        } else {
            Pauli::Y
        };
    }
    PauliIndex::from_paulis(&ps)
}

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Real gates in the conforming orientation.
pub fn conforming_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize, k: u64, l: u64) -> Circuit {
    let gates = (0..gates)
        .map(|_| Gate::with_default_orientation(random_real_index(rng, n)))
        .collect();
    Circuit::new(n, k, l, gates).expect("generated gates match the qubit count")
}

/// Real gates with uniformly random orientation.
pub fn real_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize, k: u64, l: u64) -> Circuit {
    let gates = (0..gates)
        .map(|_| Gate::new(random_real_index(rng, n), random_sign(rng)))
        .collect();
    Circuit::new(n, k, l, gates).expect("generated gates match the qubit count")
}

/// Uniform Pauli indices (real or complex) with random orientation.
pub fn mixed_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize, k: u64, l: u64) -> Circuit {
    let gates = (0..gates)
        .map(|_| Gate::new(random_pauli_index(rng, n), random_sign(rng)))
        .collect();
    Circuit::new(n, k, l, gates).expect("generated gates match the qubit count")
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> BitVector {
    BitVector::from_bits(&(0..len).map(|_| rng.gen()).collect::<Vec<bool>>())
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen() {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Product of random `rows × r` and `r × cols` factors with `r` drawn from
/// `0..=min(rows, cols)`, so low ranks are common.
pub fn random_low_rank_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let r = rng.gen_range(0..=rows.min(cols));
    let left = random_matrix(rng, rows, r);
    let right = random_matrix(rng, r, cols);
    left.mul(&right).expect("inner dimensions agree")
}

/// Square matrix with unit diagonal and uniform off-diagonal entries.
pub fn unit_diagonal_matrix<R: Rng>(rng: &mut R, n: usize) -> BitMatrix {
    let mut m = random_matrix(rng, n, n);
    for i in 0..n {
        m.set(i, i, true);
    }
    m
}

/// Instance with a kernel of random dimension and a uniform `B`.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, max_xy: u64) -> QsweInstance {
    let m = rng.gen_range(0..=n + 1);
    let a = random_low_rank_matrix(rng, m, n);
    let b = random_matrix(rng, n, n);
    let x = rng.gen_range(1..=max_xy);
    let y = rng.gen_range(1..=max_xy);
    QsweInstance::new(a, b, x, y).expect("shapes agree")
}

/// `(H0, H1)`, both `n × cols` with `diag(H0ᵀH1) = I`. With probability one
/// half the columns of `H0` are drawn from a random subspace of dimension
/// below n, which makes `H0` rank deficient.
pub fn replacement_pair<R: Rng>(rng: &mut R, n: usize, cols: usize) -> (BitMatrix, BitMatrix) {
    assert!(n > 0);
    let span_dim = if rng.gen() { rng.gen_range(1..=n) } else { n };
    loop {
        let basis: Vec<BitVector> = (0..span_dim).map(|_| random_vector(rng, n)).collect();
        let mut h0 = Vec::with_capacity(cols);
        let mut h1 = Vec::with_capacity(cols);
        let mut ok = true;
        for _ in 0..cols {
            match column_pair(rng, n, &basis) {
                Some((c, d)) => {
                    h0.push(c);
                    h1.push(d);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return (BitMatrix::from_columns(n, &h0), BitMatrix::from_columns(n, &h1));
        }
    }
}

fn column_pair<R: Rng>(rng: &mut R, n: usize, basis: &[BitVector]) -> Option<(BitVector, BitVector)> {
    for _ in 0..64 {
        let d = random_vector(rng, n);
        if d.is_zero() || basis.iter().all(|b| !b.dot(&d)) {
            continue;
        }
        loop {
            let mut c = BitVector::zeros(n);
            for b in basis {
                if rng.gen() {
                    c.xor_assign(b);
                }
            }
            if c.dot(&d) {
                return Some((c, d));
            }
        }
    }
    None
}
