//! Model Hamiltonian generators: Hubbard, Bose-Hubbard, jellium and the
//! mean-field d-wave model.

mod grid;
mod jellium;
mod lattice;

pub use grid::{Nuclei, PlaneWaveGrid};
pub use jellium::{jellium, JelliumBasis};
pub use lattice::{bose_hubbard, fermi_hubbard, mean_field_dwave, Bond, Lattice};
