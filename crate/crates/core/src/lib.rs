//! Signed quadratic weight enumerators over GF(2) and their correspondence
//! with real Pauli-rotation circuits.
//!
//! The enumerator, the circuit-to-instance reductions and their inverses, and
//! an exact big-integer simulator used as the reference for all of them.

pub mod circuit;
pub mod enumerator;
pub mod error;
pub mod format;
pub mod gf2;
pub mod pauli;
pub mod random;
pub mod reduction;
pub mod sim;
pub mod verify;

pub use circuit::{Circuit, CircuitClass, Gate, GateKind};
pub use enumerator::{eval, eval_naive, eval_with, EvalOptions, QsweInstance, ShapeTag};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use pauli::{Pauli, PauliIndex, Sign, SignedPauli};
pub use sim::{ExactRational, GaussianInt, Model};
