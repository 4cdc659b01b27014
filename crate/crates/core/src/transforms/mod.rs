//! Maps between operator representations.

mod bosonic;
mod encodings;
mod fourier;
mod tensor;

pub use bosonic::{boson_quad_convert, Direction};
pub use encodings::{bravyi_kitaev, jordan_wigner, jordan_wigner_ladder, FenwickTree};
pub use fourier::{fourier_transform, inverse_fourier_transform};
pub use tensor::{extract_quadratic, tensor_to_fermion};
