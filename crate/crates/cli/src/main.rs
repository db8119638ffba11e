use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "qswe",
    version,
    about = "Signed weight enumerators and real Pauli-rotation circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S(A, B, x, y) for an instance file.
    Eval {
        /// Instance file, or `-` for standard input.
        file: String,
        /// Brute-force over all 2^n vectors instead of walking the kernel.
        #[arg(long)]
        naive: bool,
        /// Print the sign of S; exits 2 if |S| is below the promised bound.
        #[arg(long)]
        sign: bool,
    },
    /// Turn a real circuit into an instance.
    Reduce {
        file: String,
        #[arg(long, value_enum, default_value_t = Target::Amplitude)]
        target: Target,
        /// Emit the (A', lwtr(A')) form with unit diagonal (amplitude only).
        #[arg(long)]
        canonical: bool,
    },
    /// Build a circuit from a P3- or P4-shaped instance.
    Circuit {
        file: String,
        #[arg(long, value_enum)]
        from: Shape,
    },
    /// Exact simulation of a circuit.
    Sim {
        file: String,
        #[arg(long, value_enum, default_value_t = Quantity::Amplitude)]
        what: Quantity,
        #[arg(long, value_enum, default_value_t = ModelArg::Qram)]
        model: ModelArg,
        /// Print the sign instead of the value; exits 2 if the promise fails.
        #[arg(long)]
        sign: bool,
    },
    /// Rewrite a circuit with complex gates as a real circuit on one more qubit.
    EmbedReal { file: String },
    /// Cross-check reductions against the simulator on random circuits.
    Verify(VerifyArgs),
    /// Generate random test inputs.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    qubits: usize,
    #[arg(long, default_value_t = 8)]
    gates: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Gate coefficients as `k,l`.
    #[arg(long, default_value = "4,3", value_parser = parse_pair)]
    kl: (u64, u64),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    Circuit {
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        #[arg(long, default_value_t = 8)]
        gates: usize,
        #[arg(long, default_value = "4,3", value_parser = parse_pair)]
        kl: (u64, u64),
        #[arg(long, value_enum, default_value_t = GateMix::Conforming)]
        kind: GateMix,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Instance {
        #[arg(long, default_value_t = 8)]
        vars: usize,
        /// Largest value drawn for x and y.
        #[arg(long, default_value_t = 5)]
        max_xy: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Matrix {
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    P3 {
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Weights as `x,y`.
        #[arg(long, default_value = "3,4", value_parser = parse_pair)]
        xy: (u64, u64),
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    P4 {
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value = "3,4", value_parser = parse_pair)]
        xy: (u64, u64),
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Amplitude,
    Trace,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    P3,
    P4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Quantity {
    Amplitude,
    Trace,
    Prob,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelArg {
    Qram,
    Q1ram,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GateMix {
    Conforming,
    Real,
    Mixed,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two integers `a,b`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    let pair = (parse(a)?, parse(b)?);
    if pair.0 == 0 || pair.1 == 0 {
        return Err("both values must be positive".into());
    }
    Ok(pair)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
