//! File formats: FCIDUMP integrals, JSON operators, tensors and matrices,
//! and the molecular archive.

mod archive;
mod fcidump;
mod json;

pub use archive::{Atom, MolecularArchive, ARCHIVE_VERSION};
pub use fcidump::{emit_fcidump, parse_fcidump, Fcidump};
pub use json::{
    matrix_from_json, matrix_to_json, operator_from_json, operator_to_json, rotation_from_json,
    tensor_from_json, tensor_to_json,
};
