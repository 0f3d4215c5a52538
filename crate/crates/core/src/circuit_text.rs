//! Line-based circuit text format: one gate per line, e.g.
//!
//! ```text
//! u3(1.5707963267948966e0,-2.9999999999999999e-1,0.0000000000000000e0) q[1]
//! cx q[1],q[0]
//! x q[0]
//! ```
//!
//! Numeric literals carry 17 significant digits, enough to round-trip
//! `f64` exactly. The parser infers the qubit count from the largest
//! index mentioned.

use crate::error::{Error, Result};
use crate::gate::{Circuit, Gate};
use crate::scalar::Scalar;

/// Render a circuit in the line format.
pub fn emit<T: Scalar>(circuit: &Circuit<T>) -> String {
    let mut out = String::new();
    for gate in circuit.gates() {
        match gate {
            Gate::U3 {
                theta,
                phi,
                lambda,
                qubit,
            } => {
                out.push_str(&format!(
                    "u3({theta:.16e},{phi:.16e},{lambda:.16e}) q[{qubit}]\n"
                ));
            }
            Gate::X { qubit } => out.push_str(&format!("x q[{qubit}]\n")),
            Gate::Z { qubit } => out.push_str(&format!("z q[{qubit}]\n")),
            Gate::Hadamard { qubit } => out.push_str(&format!("h q[{qubit}]\n")),
            Gate::Cnot { control, target } => {
                out.push_str(&format!("cx q[{control}],q[{target}]\n"));
            }
            Gate::Swap { a, b } => out.push_str(&format!("swap q[{a}],q[{b}]\n")),
        }
    }
    out
}

fn parse_qubit(token: &str, line_no: usize) -> Result<usize> {
    token
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("line {line_no}: bad qubit reference {token:?}")))
}

fn parse_scalar<T: Scalar>(token: &str, line_no: usize) -> Result<T> {
    let x: f64 = token
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line_no}: bad numeric literal {token:?}")))?;
    T::from_f64(x).ok_or_else(|| Error::Parse(format!("line {line_no}: literal out of range")))
}

/// Parse the line format back into a circuit.
pub fn parse<T: Scalar>(text: &str) -> Result<Circuit<T>> {
    let mut gates: Vec<Gate<T>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("line {line_no}: missing operands")))?;
        let rest = rest.trim();
        let gate = if let Some(params) = head.strip_prefix("u3(") {
            let params = params
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("line {line_no}: unterminated u3(...)")))?;
            let mut it = params.split(',');
            let theta = parse_scalar(
                it.next()
                    .ok_or_else(|| Error::Parse(format!("line {line_no}: u3 needs 3 angles")))?,
                line_no,
            )?;
            let phi = parse_scalar(
                it.next()
                    .ok_or_else(|| Error::Parse(format!("line {line_no}: u3 needs 3 angles")))?,
                line_no,
            )?;
            let lambda = parse_scalar(
                it.next()
                    .ok_or_else(|| Error::Parse(format!("line {line_no}: u3 needs 3 angles")))?,
                line_no,
            )?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("line {line_no}: u3 takes 3 angles")));
            }
            Gate::U3 {
                theta,
                phi,
                lambda,
                qubit: parse_qubit(rest, line_no)?,
            }
        } else {
            match head {
                "x" => Gate::X {
                    qubit: parse_qubit(rest, line_no)?,
                },
                "z" => Gate::Z {
                    qubit: parse_qubit(rest, line_no)?,
                },
                "h" => Gate::Hadamard {
                    qubit: parse_qubit(rest, line_no)?,
                },
                "cx" | "swap" => {
                    let (qa, qb) = rest.split_once(',').ok_or_else(|| {
                        Error::Parse(format!("line {line_no}: {head} needs two qubits"))
                    })?;
                    let a = parse_qubit(qa.trim(), line_no)?;
                    let b = parse_qubit(qb.trim(), line_no)?;
                    if head == "cx" {
                        Gate::Cnot {
                            control: a,
                            target: b,
                        }
                    } else {
                        Gate::Swap { a, b }
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {line_no}: unknown gate {other:?}"
                    )))
                }
            }
        };
        gates.push(gate);
    }
    if gates.is_empty() {
        return Err(Error::Parse("no gate lines found".into()));
    }
    let num_qubits = gates
        .iter()
        .flat_map(|g| g.qubits())
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let mut circuit = Circuit::new(num_qubits);
    for g in gates {
        circuit.push(g)?;
    }
    Ok(circuit)
}
