//! Trotter error operators, second-order Trotter steps and QASM emission
//! for exponentiated Pauli strings.

mod error_op;
mod qasm;

pub use error_op::{
    effective_hamiltonian, second_order_trotter_dense, second_order_trotter_unitary,
    trotter_error_v1, TermSequence, TROTTER_MODE_LIMIT,
};
pub use qasm::{pauli_exp_to_qasm, pauli_exp_to_qasm_lines};
