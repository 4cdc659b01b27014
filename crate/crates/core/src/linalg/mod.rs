//! Sparse matrices for qubit operators, eigensolvers and dense helpers.

mod dense;
mod eigen;
mod sparse;

pub use dense::{expm, hermiticity_deviation, unitarity_deviation};
pub use eigen::{eigenspectrum, eigensystem, eigh, EigenPairs, DENSE_QUBIT_LIMIT};
pub(crate) use sparse::check_normalized;
pub use sparse::{
    expectation, ladder_matrix, to_sparse, to_sparse_with_limit, SparseMatrix, DEFAULT_QUBIT_LIMIT,
};
