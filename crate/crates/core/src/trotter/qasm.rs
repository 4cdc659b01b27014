use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::ops::{Symbol, TermOperator, Variant};

/// QASM lines for `∏_k exp(−i θ_k·time·P_k)`, one gate per line.
///
/// Each entry of `ops` must be a single Pauli term with a real
/// coefficient. X factors are rotated with `H`, Y factors with
/// `Rx ±π/2`, and the parity is collected by a CNOT chain over the
/// support in ascending order onto the highest qubit.
pub fn pauli_exp_to_qasm_lines(ops: &[TermOperator], time: f64) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    for (k, op) in ops.iter().enumerate() {
        if op.variant() != Variant::Qubit {
            return Err(Error::UnsupportedVariant {
                variant: op.variant(),
                operation: "pauli_exp_to_qasm",
            });
        }
        if op.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "entry {k} has {} terms; each entry must be a single Pauli term",
                op.len()
            )));
        }
        let (term, c) = op.terms().next().expect("one term");
        if c.im != 0.0 {
            return Err(Error::InvalidArgument(format!(
                "entry {k} has non-real coefficient {c}"
            )));
        }
        let factors = term.factors();
        if factors.is_empty() {
            continue;
        }
        let basis_change = |lines: &mut Vec<String>, inverse: bool| {
            for f in factors {
                match f.symbol {
                    Symbol::X => lines.push(format!("H {}", f.mode)),
                    Symbol::Y => {
                        let angle = if inverse { -FRAC_PI_2 } else { FRAC_PI_2 };
                        lines.push(format!("Rx {angle} {}", f.mode));
                    }
                    _ => {}
                }
            }
        };
        let ladder: Vec<String> = factors
            .windows(2)
            .map(|w| format!("CNOT {} {}", w[0].mode, w[1].mode))
            .collect();
        let target = factors[factors.len() - 1].mode;
        basis_change(&mut lines, false);
        lines.extend(ladder.iter().cloned());
        lines.push(format!("Rz {} {target}", c.re * time));
        lines.extend(ladder.iter().rev().cloned());
        basis_change(&mut lines, true);
    }
    Ok(lines)
}

/// [`pauli_exp_to_qasm_lines`] joined with newlines, each line terminated.
pub fn pauli_exp_to_qasm(ops: &[TermOperator], time: f64) -> Result<String> {
    let mut text = String::new();
    for line in pauli_exp_to_qasm_lines(ops, time)? {
        text.push_str(&line);
        text.push('\n');
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli(text: &str, c: f64) -> TermOperator {
        TermOperator::parse(Variant::Qubit, text, c).unwrap()
    }

    #[test]
    fn single_z_needs_no_ladder() {
        assert_eq!(
            pauli_exp_to_qasm_lines(&[pauli("Z0", 0.25)], 1.0).unwrap(),
            vec!["Rz 0.25 0"]
        );
    }

    #[test]
    fn time_scales_angle() {
        let lines = pauli_exp_to_qasm_lines(&[pauli("Z1 Z2", 0.5)], 0.5).unwrap();
        assert_eq!(lines, vec!["CNOT 1 2", "Rz 0.25 2", "CNOT 1 2"]);
    }

    #[test]
    fn invalid_entries() {
        let complex =
            TermOperator::parse(Variant::Qubit, "X0", num_complex::Complex64::new(0.0, 1.0))
                .unwrap();
        assert!(pauli_exp_to_qasm(&[complex], 1.0).is_err());
        let two = pauli("X0", 1.0) + pauli("Z1", 1.0);
        assert!(pauli_exp_to_qasm(&[two], 1.0).is_err());
        assert!(pauli_exp_to_qasm(&[TermOperator::fermion(&[(0, true)], 1.0)], 1.0).is_err());
    }
}
