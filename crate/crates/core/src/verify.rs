//! Randomized cross-check of the reductions against the exact simulator.
//!
//! Trial `t` draws its circuit from ChaCha8 seeded with `seed` on stream `t`,
//! so any single trial can be replayed without running the ones before it.

use std::fmt;

use num_traits::Zero;

use crate::circuit::Circuit;
use crate::enumerator::{classify_shape, eval_with, EvalOptions, ShapeTag};
use crate::error::{Error, Result};
use crate::gf2::{lwtr, rank, BitMatrix};
use crate::pauli::DEFAULT_DENSE_LIMIT;
use crate::random::{conforming_circuit, rng, Rng64};
use crate::reduction::{amplitude_instance, canonicalize_p3_detailed, trace_instance, CanonicalForm};
use crate::sim::{amplitude00, normalized_trace};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub qubits: usize,
    pub gates: usize,
    pub trials: usize,
    pub k: u64,
    pub l: u64,
    pub eval: EvalOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            qubits: 3,
            gates: 6,
            trials: 20,
            k: 4,
            l: 3,
            eval: EvalOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Amplitude,
    Trace,
    Canonical,
    Replacement,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Amplitude => "amplitude",
            CheckKind::Trace => "trace",
            CheckKind::Canonical => "canonical",
            CheckKind::Replacement => "replacement",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(kind: CheckKind, passed: bool, detail: String) -> Self {
        Check { kind, passed, detail }
    }
}

#[derive(Clone, Debug)]
pub struct TrialReport {
    pub trial: usize,
    pub circuit: Circuit,
    pub checks: Vec<Check>,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn replacement_triggered(&self) -> bool {
        self.checks.iter().any(|c| c.kind == CheckKind::Replacement)
    }
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trial {}:", self.trial)?;
        for c in &self.checks {
            write!(f, " {}={}", c.kind, if c.passed { "PASS" } else { "FAIL" })?;
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            write!(f, "\n  {}: {}", c.kind, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub trials: Vec<TrialReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(TrialReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialReport> {
        self.trials.iter().filter(|t| !t.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trials {
            writeln!(f, "{t}")?;
        }
        let ok = self.trials.iter().filter(|t| t.passed()).count();
        let replaced = self.trials.iter().filter(|t| t.replacement_triggered()).count();
        write!(
            f,
            "{} {ok}/{} trials passed ({replaced} used the full-rank replacement)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials.len()
        )
    }
}

pub fn trial_rng(seed: u64, trial: usize) -> Rng64 {
    let mut r = rng(seed);
    r.set_stream(trial as u64);
    r
}

pub fn trial_circuit(config: &VerifyConfig, trial: usize) -> Circuit {
    conforming_circuit(
        &mut trial_rng(config.seed, trial),
        config.qubits,
        config.gates,
        config.k,
        config.l,
    )
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.qubits > DEFAULT_DENSE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "qubits",
            size: config.qubits,
            limit: DEFAULT_DENSE_LIMIT,
        });
    }
    if config.qubits == 0 && config.gates > 0 {
        return Err(Error::pre("verify", "real gates need at least one qubit"));
    }
    let trials = (0..config.trials)
        .map(|t| check_circuit(t, trial_circuit(config, t), &config.eval))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { trials })
}

/// Runs every check on one real conforming circuit.
pub fn check_circuit(trial: usize, circuit: Circuit, opts: &EvalOptions) -> Result<TrialReport> {
    let mut checks = Vec::with_capacity(4);

    let s_amp = eval_with(&amplitude_instance(&circuit)?, opts)?;
    let amp = amplitude00(&circuit)?.value;
    checks.push(Check::new(
        CheckKind::Amplitude,
        amp.im.is_zero() && amp.re == s_amp,
        format!("simulator {amp}, enumerator {s_amp}"),
    ));

    let s_tr = eval_with(&trace_instance(&circuit)?, opts)?;
    let tr = normalized_trace(&circuit)?;
    let passed = matches!(tr.divided(), Some(ref d) if d.im.is_zero() && d.re == s_tr);
    checks.push(Check::new(
        CheckKind::Trace,
        passed,
        format!(
            "simulator trace {} over 2^{}, enumerator {s_tr}",
            tr.value, tr.num_qubits
        ),
    ));

    let cf = canonicalize_p3_detailed(&circuit)?;
    let s_can = eval_with(&cf.instance, opts)?;
    let shape = classify_shape(&cf.instance);
    checks.push(Check::new(
        CheckKind::Canonical,
        s_can == s_amp && shape == ShapeTag::P3,
        format!("canonical {s_can} ({shape:?}), amplitude {s_amp}"),
    ));

    if cf.replaced {
        let (passed, detail) = replacement_postconditions(&cf);
        checks.push(Check::new(CheckKind::Replacement, passed, detail));
    }
    Ok(TrialReport { trial, circuit, checks })
}

/// Independent re-check of the replacement: full rank, unit diagonal, same
/// strictly lower part, and untouched trailing columns.
pub fn replacement_postconditions(cf: &CanonicalForm) -> (bool, String) {
    let n = cf.h0.rows();
    let gram = |h: &BitMatrix| h.transpose().mul(&cf.h1).expect("same shape");
    let g0 = gram(&cf.h0);
    let g2 = gram(&cf.h2);
    let mut problems = Vec::new();
    if rank(&cf.h2) != n {
        problems.push(format!("rank {} < {n}", rank(&cf.h2)));
    }
    if !g2.diagonal_is_identity() {
        problems.push("diagonal is not the identity".to_string());
    }
    if lwtr(&g2).ok() != lwtr(&g0).ok() {
        problems.push("strictly lower part changed".to_string());
    }
    if let Some(j) = (n..cf.h0.cols()).find(|&j| cf.h0.col(j) != cf.h2.col(j)) {
        problems.push(format!("column {j} changed"));
    }
    let detail = if problems.is_empty() {
        format!("replaced {n}x{} z-part", cf.h0.cols())
    } else {
        problems.join("; ")
    };
    (problems.is_empty(), detail)
}
