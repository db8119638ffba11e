//! Line-oriented text formats for matrices, circuits and instances.
//!
//! Lines starting with `#` are comments and may appear anywhere. Matrix rows
//! are strings over `{0,1}` with no inner whitespace; a row of a zero-column
//! matrix is an empty line. Trailing blank lines are ignored.
//!
//! ```text
//! gf2-matrix v1          qswe-circuit v1        qswe v1
//! rows 2 cols 3          qubits 2               n 2 m 1
//! 101                    k 4 l 3                x 3 y 4
//! 011                    gate YX                A
//!                        gate IY -              11
//!                                               B
//!                                               00
//!                                               10
//! ```

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate};
use crate::enumerator::QsweInstance;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::{PauliIndex, Sign};

pub const MATRIX_HEADER: &str = "gf2-matrix v1";
pub const CIRCUIT_HEADER: &str = "qswe-circuit v1";
pub const INSTANCE_HEADER: &str = "qswe v1";

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'))
            .collect();
        Self { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self.lines.get(self.pos).copied().ok_or_else(|| {
            let last = self.lines.last().map_or(1, |(n, _)| n + 1);
            err(last, 1, format!("unexpected end of input, expected {what}"))
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn finish(&self) -> Result<()> {
        match self.lines[self.pos..].iter().find(|(_, l)| !l.is_empty()) {
            None => Ok(()),
            Some((n, l)) => Err(err(*n, 1, format!("unexpected trailing content '{l}'"))),
        }
    }
}

fn err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        msg: msg.into(),
    }
}

fn expect_exact(lines: &mut Lines, text: &str) -> Result<()> {
    let (n, l) = lines.next(&format!("'{text}'"))?;
    if l != text {
        return Err(err(n, 1, format!("expected '{text}', found '{l}'")));
    }
    Ok(())
}

/// Parses `key1 <v1> key2 <v2> …` with the given keys in order.
fn keyed_numbers<const K: usize>(lines: &mut Lines, keys: [&str; K]) -> Result<(usize, [u64; K])> {
    let what = keys
        .iter()
        .map(|k| format!("{k} <value>"))
        .collect::<Vec<_>>()
        .join(" ");
    let (n, l) = lines.next(&format!("'{what}'"))?;
    let tokens = tokens_with_columns(l);
    if tokens.len() != 2 * K {
        return Err(err(n, 1, format!("expected '{what}', found '{l}'")));
    }
    let mut out = [0u64; K];
    for (i, key) in keys.iter().enumerate() {
        let (col, tok) = tokens[2 * i];
        if tok != *key {
            return Err(err(n, col, format!("expected keyword '{key}', found '{tok}'")));
        }
        let (col, tok) = tokens[2 * i + 1];
        out[i] = tok
            .parse()
            .map_err(|_| err(n, col, format!("'{tok}' is not a non-negative integer")))?;
    }
    Ok((n, out))
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn to_usize(v: u64, line: usize) -> Result<usize> {
    usize::try_from(v).map_err(|_| err(line, 1, format!("{v} is too large")))
}

fn matrix_rows(lines: &mut Lines, rows: usize, cols: usize) -> Result<BitMatrix> {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        let (n, l) = lines.next(&format!("matrix row {} of {rows}", i + 1))?;
        let len = l.chars().count();
        if len != cols {
            return Err(err(n, 1, format!("row has {len} entries, expected {cols}")));
        }
        for (j, ch) in l.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(i, j, true),
                _ => return Err(err(n, j + 1, format!("'{ch}' is not 0 or 1"))),
            }
        }
    }
    Ok(m)
}

fn write_rows(out: &mut String, m: &BitMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines::new(text);
    expect_exact(&mut lines, MATRIX_HEADER)?;
    let (n, [rows, cols]) = keyed_numbers(&mut lines, ["rows", "cols"])?;
    let m = matrix_rows(&mut lines, to_usize(rows, n)?, to_usize(cols, n)?)?;
    lines.finish()?;
    Ok(m)
}

pub fn write_matrix(m: &BitMatrix) -> String {
    let mut out = format!("{MATRIX_HEADER}\nrows {} cols {}\n", m.rows(), m.cols());
    write_rows(&mut out, m);
    out
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = Lines::new(text);
    expect_exact(&mut lines, CIRCUIT_HEADER)?;
    let (qn, [qubits]) = keyed_numbers(&mut lines, ["qubits"])?;
    let qubits = to_usize(qubits, qn)?;
    let (kn, [k, l]) = keyed_numbers(&mut lines, ["k", "l"])?;
    if k == 0 || l == 0 {
        return Err(err(kn, 1, "k and l must be positive"));
    }
    let mut gates = Vec::new();
    while let Some((n, line)) = lines.peek() {
        lines.pos += 1;
        if line.is_empty() {
            lines.finish()?;
            break;
        }
        let tokens = tokens_with_columns(line);
        match tokens.first() {
            Some((_, "gate")) => {}
            Some((col, tok)) => return Err(err(n, *col, format!("expected 'gate', found '{tok}'"))),
            None => unreachable!("blank lines handled above"),
        }
        let (pauli, sign) = match &tokens[1..] {
            [] => ("", None),
            [(_, s)] if is_sign(s) => ("", Some(*s)),
            [(_, p)] => (*p, None),
            [(_, p), (_, s)] if is_sign(s) => (*p, Some(*s)),
            [_, (col, s)] => return Err(err(n, *col, format!("'{s}' is not + or -"))),
            [_, _, (col, _), ..] => return Err(err(n, *col, "too many fields on gate line")),
        };
        let pcol = tokens.get(1).map_or(1, |(c, _)| *c);
        let index: PauliIndex = pauli.parse().map_err(|e| match e {
            Error::Parse { column, msg, .. } => err(n, pcol + column - 1, msg),
            other => other,
        })?;
        if index.num_qubits() != qubits {
            return Err(err(
                n,
                pcol,
                format!("gate acts on {} qubits, circuit declares {qubits}", index.num_qubits()),
            ));
        }
        let gate = match sign {
            Some("+") => Gate::new(index, Sign::Plus),
            Some(_) => Gate::new(index, Sign::Minus),
            None => Gate::with_default_orientation(index),
        };
        gates.push(gate);
    }
    Circuit::new(qubits, k, l, gates)
}

fn is_sign(s: &str) -> bool {
    s == "+" || s == "-"
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = format!("{CIRCUIT_HEADER}\nqubits {}\nk {} l {}\n", c.num_qubits(), c.k(), c.l());
    for g in c.gates() {
        out.push_str("gate");
        if c.num_qubits() > 0 {
            let _ = write!(out, " {}", g.index);
        }
        let _ = write!(out, " {}", g.epsilon.as_char());
        out.push('\n');
    }
    out
}

pub fn parse_instance(text: &str) -> Result<QsweInstance> {
    let mut lines = Lines::new(text);
    expect_exact(&mut lines, INSTANCE_HEADER)?;
    let (nn, [n, m]) = keyed_numbers(&mut lines, ["n", "m"])?;
    let (n, m) = (to_usize(n, nn)?, to_usize(m, nn)?);
    let (xn, [x, y]) = keyed_numbers(&mut lines, ["x", "y"])?;
    if x == 0 || y == 0 {
        return Err(err(xn, 1, "x and y must be positive"));
    }
    expect_exact(&mut lines, "A")?;
    let a = matrix_rows(&mut lines, m, n)?;
    expect_exact(&mut lines, "B")?;
    let b = matrix_rows(&mut lines, n, n)?;
    lines.finish()?;
    QsweInstance::new(a, b, x, y)
}

pub fn write_instance(inst: &QsweInstance) -> String {
    write_instance_with_comment(inst, None)
}

/// Writes the instance; `comment` (without the leading `#`) goes on the line
/// after the header.
pub fn write_instance_with_comment(inst: &QsweInstance, comment: Option<&str>) -> String {
    let mut out = format!("{INSTANCE_HEADER}\n");
    if let Some(c) = comment {
        let _ = writeln!(out, "# {c}");
    }
    let _ = write!(out, "n {} m {}\nx {} y {}\nA\n", inst.n(), inst.m(), inst.x, inst.y);
    write_rows(&mut out, &inst.a);
    out.push_str("B\n");
    write_rows(&mut out, &inst.b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        let text = write_matrix(&m);
        assert_eq!(text, "gf2-matrix v1\nrows 2 cols 3\n101\n011\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn matrix_rejects_wrong_dimensions() {
        let e = parse_matrix("gf2-matrix v1\nrows 2 cols 3\n101\n01\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 4,
                column: 1,
                msg: "row has 2 entries, expected 3".into()
            }
        );
        assert!(parse_matrix("gf2-matrix v1\nrows 2 cols 2\n10\n").is_err());
        assert!(parse_matrix("gf2-matrix v1\nrows 1 cols 2\n10\n11\n").is_err());
        let e = parse_matrix("gf2-matrix v1\nrows 1 cols 2\n1x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 2, .. }));
    }

    #[test]
    fn circuit_defaults_and_explicit_signs() {
        let c = parse_circuit("qswe-circuit v1\nqubits 2\nk 4 l 3\n# comment\ngate YX\ngate XI +\ngate YYY -\n");
        assert!(c.is_err(), "YYY has the wrong width");
        let c = parse_circuit("qswe-circuit v1\nqubits 2\nk 4 l 3\ngate YX\ngate XI +\ngate ZY -\n").unwrap();
        let signs: Vec<Sign> = c.gates().iter().map(|g| g.epsilon).collect();
        assert_eq!(signs, [Sign::Minus, Sign::Plus, Sign::Minus]);
        let text = write_circuit(&c);
        assert_eq!(
            text,
            "qswe-circuit v1\nqubits 2\nk 4 l 3\ngate YX -\ngate XI +\ngate ZY -\n"
        );
        assert_eq!(parse_circuit(&text).unwrap(), c);
    }

    #[test]
    fn circuit_errors_carry_positions() {
        let e = parse_circuit("qswe-circuit v1\nqubits 2\nk 4 l 3\ngate YQ\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 4,
                column: 7,
                msg: "'Q' is not one of I, X, Y, Z".into()
            }
        );
        let e = parse_circuit("qswe-circuit v1\nqubits 1\nk 0 l 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_circuit("qswe-circuit v1\nqubits 1\nk 4 l 3\ngate Y *\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, column: 8, .. }));
        assert!(parse_circuit("qswe-circuit v2\n").is_err());
    }

    #[test]
    fn instance_round_trip_with_comment() {
        let inst = QsweInstance::new(
            BitMatrix::from_rows(&[[1, 1]]),
            BitMatrix::from_rows(&[[0, 0], [1, 0]]),
            3,
            4,
        )
        .unwrap();
        let text = write_instance_with_comment(&inst, Some("scale N=2"));
        assert_eq!(text, "qswe v1\n# scale N=2\nn 2 m 1\nx 3 y 4\nA\n11\nB\n00\n10\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn zero_column_instance() {
        let inst = QsweInstance::new(BitMatrix::zeros(2, 0), BitMatrix::zeros(0, 0), 3, 4).unwrap();
        let text = write_instance(&inst);
        assert_eq!(text, "qswe v1\nn 0 m 2\nx 3 y 4\nA\n\n\nB\n");
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn zero_column_matrix() {
        let m = BitMatrix::zeros(2, 0);
        let text = write_matrix(&m);
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert!(parse_circuit("qswe-circuit v1\nqubits 1\nk 4 l 3\ngate Y\n\ngate Y\n").is_err());
    }

    #[test]
    fn zero_qubit_circuit() {
        let c = Circuit::new(0, 2, 1, vec![Gate::new(PauliIndex::identity(0), Sign::Plus)]).unwrap();
        let text = write_circuit(&c);
        assert_eq!(text, "qswe-circuit v1\nqubits 0\nk 2 l 1\ngate +\n");
        assert_eq!(parse_circuit(&text).unwrap(), c);
    }
}
