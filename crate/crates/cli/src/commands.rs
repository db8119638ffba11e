use std::fmt;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use qswe_core::circuit::{embed_real, validate_real};
use qswe_core::enumerator::{decide_sign, eval_naive, eval_with, EvalOptions, QsweInstance};
use qswe_core::format::{
    parse_circuit, parse_instance, write_circuit, write_instance, write_instance_with_comment, write_matrix,
};
use qswe_core::gf2::lwtr;
use qswe_core::random::{
    conforming_circuit, mixed_circuit, random_instance, random_matrix, real_circuit, rng, unit_diagonal_matrix,
};
use qswe_core::reduction::{
    amplitude_instance, canonicalize_p3, p3_instance, p3_to_circuit, p4_instance, p4_to_circuit, trace_instance,
};
use qswe_core::sim::{amplitude00, normalized_trace, prob_first_qubit_one, solve_probability_sign};
use qswe_core::verify::{self, VerifyConfig};
use qswe_core::{Circuit, Model, Sign};

use crate::{Command, GateMix, GenCommand, ModelArg, Quantity, Shape, Target, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    Core(qswe_core::Error),
    Io {
        path: String,
        source: io::Error,
    },
    Usage(String),
    /// The instance does not have the shape requested with `--from`.
    Shape(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qswe_core::Error::PromiseViolated { .. }) => 2,
            CliError::Core(qswe_core::Error::Internal { .. }) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Shape(msg) => write!(f, "instance has the wrong shape: {msg}"),
        }
    }
}

impl From<qswe_core::Error> for CliError {
    fn from(e: qswe_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: &str) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

/// Parse errors are reported with the file name in front of the position.
fn with_path<T>(path: &str, r: qswe_core::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        qswe_core::Error::Parse { .. } => CliError::Usage(format!("{path}: {e}")),
        other => CliError::Core(other),
    })
}

fn load_instance(path: &str) -> Result<QsweInstance> {
    with_path(path, parse_instance(&read_input(path)?))
}

fn load_circuit(path: &str) -> Result<Circuit> {
    with_path(path, parse_circuit(&read_input(path)?))
}

fn emit(text: &str) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    Ok(ExitCode::SUCCESS)
}

fn sign_line(sign: Sign) -> String {
    format!("{}\n", sign.as_char())
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Eval { file, naive, sign } => cmd_eval(&file, naive, sign),
        Command::Reduce {
            file,
            target,
            canonical,
        } => cmd_reduce(&file, target, canonical),
        Command::Circuit { file, from } => cmd_circuit(&file, from),
        Command::Sim {
            file,
            what,
            model,
            sign,
        } => cmd_sim(&file, what, model, sign),
        Command::EmbedReal { file } => cmd_embed(&file),
        Command::Verify(args) => cmd_verify(&args),
        Command::Gen { what } => cmd_gen(what),
    }
}

fn cmd_eval(path: &str, naive: bool, sign: bool) -> Result<ExitCode> {
    let inst = load_instance(path)?;
    let s = if naive {
        eval_naive(&inst)?
    } else {
        eval_with(&inst, &EvalOptions::from_env())?
    };
    if !sign {
        return emit(&format!("{s}\n"));
    }
    emit(&sign_line(decide_sign(&s, inst.x, inst.y, inst.n())?))
}

fn cmd_reduce(path: &str, target: Target, canonical: bool) -> Result<ExitCode> {
    let c = load_circuit(path)?;
    let inst = match (target, canonical) {
        (Target::Amplitude, false) => amplitude_instance(&c)?,
        (Target::Amplitude, true) => canonicalize_p3(&c)?,
        (Target::Trace, false) => trace_instance(&c)?,
        (Target::Trace, true) => {
            return Err(CliError::Usage("--canonical applies to --target amplitude only".into()));
        }
    };
    let comment = format!("scale {} k {} l {}", c.len(), c.k(), c.l());
    emit(&write_instance_with_comment(&inst, Some(&comment)))
}

/// Names the first shape invariant the instance breaks.
fn shape_violation(inst: &QsweInstance, shape: Shape) -> Option<String> {
    let n = inst.n();
    let c = match shape {
        Shape::P3 => {
            if inst.m() != n {
                return Some(format!("A is {}x{n}, P3 needs it square", inst.m()));
            }
            inst.a.clone()
        }
        Shape::P4 => {
            if inst.m() != 2 * n {
                return Some(format!("A has {} rows, P4 needs 2n = {}", inst.m(), 2 * n));
            }
            let c = inst.a.select_rows(0..n);
            if inst.a.select_rows(n..2 * n) != c.transpose() {
                return Some("the lower block of A is not the transpose of the upper block".into());
            }
            c
        }
    };
    if let Some(i) = (0..n).find(|&i| !c.get(i, i)) {
        return Some(format!("diagonal entry {i} is zero"));
    }
    if lwtr(&c).ok().as_ref() != Some(&inst.b) {
        return Some("B is not the strictly lower triangle of the matrix block".into());
    }
    None
}

fn cmd_circuit(path: &str, from: Shape) -> Result<ExitCode> {
    let inst = load_instance(path)?;
    if let Some(msg) = shape_violation(&inst, from) {
        return Err(CliError::Shape(msg));
    }
    let (k, l) = (inst.y, inst.x);
    let c = match from {
        Shape::P3 => p3_to_circuit(&inst.a, k, l)?,
        Shape::P4 => p4_to_circuit(&inst.a.select_rows(0..inst.n()), k, l)?,
    };
    emit(&write_circuit(&c))
}

fn cmd_sim(path: &str, what: Quantity, model: ModelArg, sign: bool) -> Result<ExitCode> {
    let c = load_circuit(path)?;
    match what {
        Quantity::Amplitude => {
            let a = amplitude00(&c)?;
            emit(&if sign { sign_line(a.sign()?) } else { format!("{a}\n") })
        }
        Quantity::Trace => {
            let t = normalized_trace(&c)?;
            emit(&if sign { sign_line(t.sign()?) } else { format!("{t}\n") })
        }
        Quantity::Prob => {
            let model = match model {
                ModelArg::Qram => Model::Qram,
                ModelArg::Q1ram => Model::Q1ram,
            };
            let p = prob_first_qubit_one(&c, model)?;
            emit(&if sign {
                sign_line(solve_probability_sign(&p)?)
            } else {
                format!("{p}\n")
            })
        }
    }
}

fn cmd_embed(path: &str) -> Result<ExitCode> {
    let c = load_circuit(path)?;
    let e = embed_real(&c);
    eprintln!("class: {}", validate_real(&e).class);
    emit(&write_circuit(&e))
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let config = VerifyConfig {
        seed: args.seed,
        qubits: args.qubits,
        gates: args.gates,
        trials: args.trials,
        k: args.kl.0,
        l: args.kl.1,
        eval: EvalOptions::from_env(),
    };
    let report = verify::run(&config)?;
    emit(&format!("{report}\n"))?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_gen(what: GenCommand) -> Result<ExitCode> {
    let text = match what {
        GenCommand::Circuit {
            qubits,
            gates,
            kl: (k, l),
            kind,
            seed,
        } => {
            let g = &mut rng(seed);
            let c = match kind {
                GateMix::Conforming | GateMix::Real if qubits == 0 && gates > 0 => {
                    return Err(CliError::Usage("real gates need at least one qubit".into()));
                }
                GateMix::Conforming => conforming_circuit(g, qubits, gates, k, l),
                GateMix::Real => real_circuit(g, qubits, gates, k, l),
                GateMix::Mixed => mixed_circuit(g, qubits, gates, k, l),
            };
            write_circuit(&c)
        }
        GenCommand::Instance { vars, max_xy, seed } => {
            if max_xy == 0 {
                return Err(CliError::Usage("--max-xy must be positive".into()));
            }
            write_instance(&random_instance(&mut rng(seed), vars, max_xy))
        }
        GenCommand::Matrix { rows, cols, seed } => write_matrix(&random_matrix(&mut rng(seed), rows, cols)),
        GenCommand::P3 { size, xy: (x, y), seed } => {
            write_instance(&p3_instance(&unit_diagonal_matrix(&mut rng(seed), size), x, y)?)
        }
        GenCommand::P4 { size, xy: (x, y), seed } => {
            write_instance(&p4_instance(&unit_diagonal_matrix(&mut rng(seed), size), x, y)?)
        }
    };
    emit(&text)
}
