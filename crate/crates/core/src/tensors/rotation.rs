use nalgebra::DMatrix;
use ndarray::{Array2, Array4, Axis};
use num_complex::Complex64;

use super::InteractionTensor;
use crate::error::{Error, Result};
use crate::linalg::{expm, hermiticity_deviation, unitarity_deviation};

/// Single-particle basis change `U`, optionally remembering the
/// anti-Hermitian generator `κ` with `U = exp(−κ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisRotation {
    matrix: Array2<Complex64>,
    generator: Option<Array2<Complex64>>,
}

fn to_nalgebra(a: &Array2<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |r, c| a[[r, c]])
}

fn from_nalgebra(m: &DMatrix<Complex64>) -> Array2<Complex64> {
    Array2::from_shape_fn((m.nrows(), m.ncols()), |(r, c)| m[(r, c)])
}

impl BasisRotation {
    /// Wraps a square matrix. Unitarity is checked when the rotation is
    /// applied.
    pub fn new(matrix: Array2<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "rotation matrix must be square, got {:?}",
                matrix.shape()
            )));
        }
        Ok(BasisRotation {
            matrix,
            generator: None,
        })
    }

    /// `U = exp(−κ)` for anti-Hermitian `κ`.
    pub fn from_generator(kappa: Array2<Complex64>) -> Result<Self> {
        let k = to_nalgebra(&kappa);
        if k.nrows() != k.ncols() {
            return Err(Error::DimensionMismatch("generator must be square".into()));
        }
        let deviation = hermiticity_deviation(&k.map(|v| v * Complex64::new(0.0, 1.0)));
        if deviation > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "generator is not anti-Hermitian (deviation {deviation:e})"
            )));
        }
        let u = expm(&(-k));
        Ok(BasisRotation {
            matrix: from_nalgebra(&u),
            generator: Some(kappa),
        })
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn generator(&self) -> Option<&Array2<Complex64>> {
        self.generator.as_ref()
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&to_nalgebra(&self.matrix))
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &BasisRotation) -> Result<BasisRotation> {
        if self.matrix.nrows() != other.matrix.nrows() {
            return Err(Error::DimensionMismatch("rotation sizes differ".into()));
        }
        BasisRotation::new(self.matrix.dot(&other.matrix))
    }
}

fn check(t: &InteractionTensor, u: &BasisRotation) -> Result<()> {
    if u.matrix.nrows() != t.n_modes() {
        return Err(Error::DimensionMismatch(format!(
            "rotation is {0}x{0} but the tensor has {1} modes",
            u.matrix.nrows(),
            t.n_modes()
        )));
    }
    let deviation = u.unitarity_deviation();
    if deviation > 1e-8 {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// Contracts the leading axis with `m` (`T'[p,…] = Σ_μ m[p,μ] T[μ,…]`) and
/// moves it to the back, so four calls touch every axis once.
fn contract_leading(t: Array4<Complex64>, m: &Array2<Complex64>) -> Array4<Complex64> {
    let n = m.nrows();
    let flat = t
        .into_shape_with_order((n, n * n * n))
        .expect("standard layout");
    let mut out = Array2::<Complex64>::zeros((n, n * n * n));
    for p in 0..n {
        let mut row = out.row_mut(p);
        for mu in 0..n {
            let w = m[[p, mu]];
            if w == Complex64::default() {
                continue;
            }
            row.scaled_add(w, &flat.index_axis(Axis(0), mu));
        }
    }
    out.into_shape_with_order((n, n, n, n))
        .expect("standard layout")
        .permuted_axes([1, 2, 3, 0])
        .as_standard_layout()
        .into_owned()
}

/// Applies `h̃ = U h U†` to the one-body part and
/// `h̃_pqrs = Σ U_pμ U_qν U*_rλ U*_sσ h_μνλσ` to the two-body part, as four
/// single-index contractions. The constant is unchanged.
pub fn rotate_basis(t: &InteractionTensor, u: &BasisRotation) -> Result<InteractionTensor> {
    check(t, u)?;
    let um = &u.matrix;
    let uc = um.mapv(|v| v.conj());
    let one_body = um.dot(&t.one_body).dot(&uc.t());
    let mut two = t.two_body.as_standard_layout().into_owned();
    for m in [um, um, &uc, &uc] {
        two = contract_leading(two, m);
    }
    InteractionTensor::new(t.constant, one_body, two)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rotation_is_noop() {
        let mut t = InteractionTensor::zeros(3);
        t.one_body[[0, 2]] = Complex64::new(1.0, 0.5);
        t.two_body[[0, 1, 2, 0]] = Complex64::new(-0.25, 0.0);
        let u = BasisRotation::new(Array2::eye(3)).unwrap();
        assert_eq!(rotate_basis(&t, &u).unwrap(), t);
    }

    #[test]
    fn rejects_non_unitary() {
        let t = InteractionTensor::zeros(2);
        let u = BasisRotation::new(Array2::eye(2) * Complex64::new(2.0, 0.0)).unwrap();
        assert!(matches!(
            rotate_basis(&t, &u),
            Err(Error::NotUnitary { .. })
        ));
        let wrong = BasisRotation::new(Array2::eye(3)).unwrap();
        assert!(rotate_basis(&t, &wrong).is_err());
    }

    #[test]
    fn generator_gives_unitary() {
        let mut k = Array2::<Complex64>::zeros((2, 2));
        k[[0, 1]] = Complex64::new(0.3, 0.2);
        k[[1, 0]] = -k[[0, 1]].conj();
        let u = BasisRotation::from_generator(k).unwrap();
        assert!(u.unitarity_deviation() < 1e-12);
        let mut not_anti = Array2::<Complex64>::zeros((2, 2));
        not_anti[[0, 1]] = Complex64::new(1.0, 0.0);
        assert!(BasisRotation::from_generator(not_anti).is_err());
    }
}
