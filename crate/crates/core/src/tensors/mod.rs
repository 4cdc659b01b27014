//! Dense coefficient tensors for two-body Hamiltonians and reduced density
//! matrices.

use ndarray::{Array2, Array4};
use num_complex::Complex64;

use crate::error::{Error, Result};

mod active;
mod rdm;
mod rotation;

pub use active::active_space;
pub use rdm::{rdm_energy, rdm_from_state, RdmTensor};
pub use rotation::{rotate_basis, BasisRotation};

/// `h₀ + Σ h_pq a_p†a_q + ½ Σ h_pqrs a_p†a_q†a_r a_s` over `n` spin-orbitals.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionTensor {
    pub constant: Complex64,
    pub one_body: Array2<Complex64>,
    pub two_body: Array4<Complex64>,
}

impl InteractionTensor {
    pub fn new(
        constant: Complex64,
        one_body: Array2<Complex64>,
        two_body: Array4<Complex64>,
    ) -> Result<Self> {
        let n = one_body.nrows();
        if one_body.ncols() != n || two_body.shape() != [n, n, n, n] {
            return Err(Error::DimensionMismatch(format!(
                "one-body shape {:?} and two-body shape {:?} do not describe the same mode count",
                one_body.shape(),
                two_body.shape()
            )));
        }
        Ok(InteractionTensor {
            constant,
            one_body,
            two_body,
        })
    }

    pub fn zeros(n: usize) -> Self {
        InteractionTensor {
            constant: Complex64::default(),
            one_body: Array2::zeros((n, n)),
            two_body: Array4::zeros((n, n, n, n)),
        }
    }

    /// Number of spin-orbitals.
    pub fn n_modes(&self) -> usize {
        self.one_body.nrows()
    }

    /// Largest entry of `|h − h†|` for the one-body part.
    pub fn one_body_hermiticity_deviation(&self) -> f64 {
        let n = self.n_modes();
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.one_body[[p, q]] - self.one_body[[q, p]].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry-wise difference to another tensor of the same size.
    pub fn max_difference(&self, other: &InteractionTensor) -> f64 {
        let one = self
            .one_body
            .iter()
            .zip(other.one_body.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let two = self
            .two_body
            .iter()
            .zip(other.two_body.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        one.max(two).max((self.constant - other.constant).norm())
    }

    /// Multiplies both coefficient arrays (not the constant) by `factor`.
    pub fn scale_integrals(&self, factor: f64) -> InteractionTensor {
        InteractionTensor {
            constant: self.constant,
            one_body: self.one_body.mapv(|v| v * factor),
            two_body: self.two_body.mapv(|v| v * factor),
        }
    }
}

/// Estimated measurement count `((Σ|h_pq| + ½Σ|h_pqrs|)/ε)²` for energy
/// precision `ε`. The constant is ignored.
pub fn measurement_bound(t: &InteractionTensor, epsilon: f64) -> Result<f64> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "precision must be positive, got {epsilon}"
        )));
    }
    let one: f64 = t.one_body.iter().map(|v| v.norm()).sum();
    let two: f64 = t.two_body.iter().map(|v| v.norm()).sum();
    Ok(((one + 0.5 * two) / epsilon).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        let zero = InteractionTensor::zeros(3);
        assert_eq!(measurement_bound(&zero, 0.1).unwrap(), 0.0);
        let mut t = InteractionTensor::zeros(2);
        t.one_body[[0, 1]] = Complex64::new(0.3, 0.4);
        t.two_body[[0, 1, 1, 0]] = Complex64::new(-1.0, 0.0);
        let a = measurement_bound(&t, 0.2).unwrap();
        let b = measurement_bound(&t, 0.1).unwrap();
        assert!((a - (1.0f64 / 0.2).powi(2)).abs() < 1e-9);
        assert!((b / a - 4.0).abs() < 1e-12);
        t.two_body[[0, 1, 1, 0]] = Complex64::new(1.0, 0.0);
        assert_eq!(measurement_bound(&t, 0.2).unwrap(), a);
        assert!(measurement_bound(&t, 0.0).is_err());
    }

    #[test]
    fn shape_mismatch() {
        let r = InteractionTensor::new(
            Complex64::default(),
            Array2::zeros((2, 2)),
            Array4::zeros((3, 3, 3, 3)),
        );
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}
