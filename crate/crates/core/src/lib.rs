//! Second-quantized operator algebra, fermion-to-qubit encodings and small
//! scale numerics for quantum simulation.

pub mod error;
pub mod io;
pub mod linalg;
pub mod models;
pub mod ops;
pub mod quadratic;
pub mod tensors;
pub mod transforms;
pub mod trotter;

pub use error::{Error, Result};
pub use ops::{normal_order, TermOperator, Variant};
