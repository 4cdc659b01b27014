//! Quadratic (mean-field) Hamiltonians: Bogoliubov diagonalization,
//! Gaussian-state preparation circuits and exact Gaussian ground states.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, hermiticity_deviation};
use crate::ops::{TermOperator, Variant};

mod circuit;
mod ground;

pub use circuit::{
    apply_operation, gaussian_circuit, simulate_circuit, CircuitDescription, CircuitOp,
};
pub use ground::{jw_gaussian_ground, jw_gaussian_ground_with_limit, DEFAULT_DENSE_MODE_LIMIT};

const PAIRING_ZERO: f64 = 1e-12;
const ZERO_ENERGY: f64 = 1e-10;

/// `Σ (M_pq − μδ_pq) a_p†a_q + ½ Σ (Δ_pq a_p†a_q† + Δ*_pq a_q a_p) + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticHamiltonian {
    hermitian: DMatrix<Complex64>,
    antisymmetric: DMatrix<Complex64>,
    chemical_potential: f64,
    constant: f64,
}

impl QuadraticHamiltonian {
    pub fn new(
        hermitian: DMatrix<Complex64>,
        antisymmetric: DMatrix<Complex64>,
        chemical_potential: f64,
        constant: f64,
    ) -> Result<Self> {
        let n = hermitian.nrows();
        if hermitian.ncols() != n || antisymmetric.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "M is {:?} and Δ is {:?}",
                hermitian.shape(),
                antisymmetric.shape()
            )));
        }
        let deviation = hermiticity_deviation(&hermitian);
        if deviation > 1e-10 {
            return Err(Error::NotHermitian { deviation });
        }
        let asym = (&antisymmetric + antisymmetric.transpose())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if asym > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "pairing matrix is not antisymmetric (deviation {asym:e})"
            )));
        }
        Ok(QuadraticHamiltonian {
            hermitian,
            antisymmetric,
            chemical_potential,
            constant,
        })
    }

    /// Particle-conserving Hamiltonian `Σ M_pq a_p†a_q + constant`.
    pub fn particle_conserving(hermitian: DMatrix<Complex64>, constant: f64) -> Result<Self> {
        let n = hermitian.nrows();
        Self::new(hermitian, DMatrix::zeros(n, n), 0.0, constant)
    }

    pub fn n_modes(&self) -> usize {
        self.hermitian.nrows()
    }

    pub fn hermitian_part(&self) -> &DMatrix<Complex64> {
        &self.hermitian
    }

    pub fn antisymmetric_part(&self) -> &DMatrix<Complex64> {
        &self.antisymmetric
    }

    pub fn chemical_potential(&self) -> f64 {
        self.chemical_potential
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// `M − μI`.
    pub fn combined_hermitian_part(&self) -> DMatrix<Complex64> {
        let n = self.n_modes();
        &self.hermitian
            - DMatrix::<Complex64>::identity(n, n) * Complex64::new(self.chemical_potential, 0.0)
    }

    pub fn is_particle_conserving(&self) -> bool {
        self.antisymmetric.iter().all(|v| v.norm() <= PAIRING_ZERO)
    }

    pub fn to_fermion_operator(&self) -> TermOperator {
        let n = self.n_modes();
        let m = self.combined_hermitian_part();
        let mut op = TermOperator::identity(Variant::Fermion).scale(self.constant);
        for p in 0..n {
            for q in 0..n {
                op += TermOperator::fermion(&[(p, true), (q, false)], m[(p, q)]);
                let d = self.antisymmetric[(p, q)];
                op += TermOperator::fermion(&[(p, true), (q, true)], 0.5 * d);
                op += TermOperator::fermion(&[(q, false), (p, false)], 0.5 * d.conj());
            }
        }
        op
    }
}

/// `Σ ε_p b_p†b_p + constant`.
///
/// For particle-conserving input `transform` is the `N×N` unitary with
/// `b_p = Σ_q transform_pq a_q`, and energies may be negative. Otherwise it
/// is the `2N×2N` matrix taking `(a, a†)` to `(b, b†)` and all energies are
/// non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalForm {
    pub orbital_energies: Vec<f64>,
    pub constant: f64,
    pub transform: DMatrix<Complex64>,
}

impl DiagonalForm {
    pub fn n_modes(&self) -> usize {
        self.orbital_energies.len()
    }

    /// `(W1, W2)` with `b_p = Σ_q W1_pq a_q + W2_pq a_q†`.
    pub fn annihilator_blocks(&self) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let n = self.n_modes();
        if self.transform.nrows() == n {
            (self.transform.clone(), DMatrix::zeros(n, n))
        } else {
            (
                self.transform.view((0, 0), (n, n)).into_owned(),
                self.transform.view((0, n), (n, n)).into_owned(),
            )
        }
    }

    /// The diagonal form rewritten in the original modes.
    pub fn to_fermion_operator(&self) -> TermOperator {
        let n = self.n_modes();
        let (w1, w2) = self.annihilator_blocks();
        let mut op = TermOperator::identity(Variant::Fermion).scale(self.constant);
        for p in 0..n {
            let mut b = TermOperator::zero(Variant::Fermion);
            for q in 0..n {
                b += TermOperator::fermion(&[(q, false)], w1[(p, q)]);
                b += TermOperator::fermion(&[(q, true)], w2[(p, q)]);
            }
            op += (&b.hermitian_conjugate() * &b).scale(self.orbital_energies[p]);
        }
        op
    }
}

/// Majorana coefficients of `a_p` (or `a_p†`) with
/// `γ_{2p} = a_p + a_p†`, `γ_{2p+1} = −i(a_p − a_p†)`.
fn ladder_majorana(p: usize, raise: bool) -> [(usize, Complex64); 2] {
    let im = if raise { -0.5 } else { 0.5 };
    [
        (2 * p, Complex64::new(0.5, 0.0)),
        (2 * p + 1, Complex64::new(0.0, im)),
    ]
}

/// Puts `qh` into the form `Σ ε_p b_p†b_p + constant`.
pub fn diagonalize(qh: &QuadraticHamiltonian) -> Result<DiagonalForm> {
    let n = qh.n_modes();
    if qh.is_particle_conserving() {
        let (energies, vectors) = eigh(&qh.combined_hermitian_part());
        return Ok(DiagonalForm {
            orbital_energies: energies,
            constant: qh.constant,
            transform: vectors.adjoint(),
        });
    }

    // H = Σ K_jk γ_j γ_k + const, then H = (i/4) Σ A_jk γ_j γ_k + const'.
    let mut k = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    let mut add = |c: Complex64, left: [(usize, Complex64); 2], right: [(usize, Complex64); 2]| {
        for (j, x) in left {
            for (l, y) in right {
                k[(j, l)] += c * x * y;
            }
        }
    };
    let m = qh.combined_hermitian_part();
    for p in 0..n {
        for q in 0..n {
            add(
                m[(p, q)],
                ladder_majorana(p, true),
                ladder_majorana(q, false),
            );
            let d = qh.antisymmetric[(p, q)];
            add(0.5 * d, ladder_majorana(p, true), ladder_majorana(q, true));
            add(
                0.5 * d.conj(),
                ladder_majorana(q, false),
                ladder_majorana(p, false),
            );
        }
    }
    let shift: Complex64 = (0..2 * n).map(|j| k[(j, j)]).sum();
    let a_complex = (&k - k.transpose()) * Complex64::new(0.0, -2.0);
    let imag = a_complex.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > 1e-9 {
        return Err(Error::Numerical(format!(
            "Majorana matrix is not real (deviation {imag:e})"
        )));
    }
    let a = a_complex.map(|v| v.re);

    // iA is Hermitian; eigenvectors with eigenvalue ε > 0 give rows y, x of
    // the orthogonal W with W A Wᵀ = ⊕ [[0, ε], [−ε, 0]].
    let ia = a.map(|v| Complex64::new(0.0, v));
    let (values, vectors) = eigh(&ia);
    let mut pairs: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::with_capacity(n);
    let mut null_space: Vec<Vec<f64>> = Vec::new();
    let sqrt2 = std::f64::consts::SQRT_2;
    for (c, &value) in values.iter().enumerate() {
        let v = vectors.column(c);
        if value > ZERO_ENERGY {
            let x = v.iter().map(|z| sqrt2 * z.re).collect();
            let y = v.iter().map(|z| sqrt2 * z.im).collect();
            pairs.push((value, y, x));
        } else if value.abs() <= ZERO_ENERGY {
            null_space.push(v.iter().map(|z| z.re).collect());
            null_space.push(v.iter().map(|z| z.im).collect());
        }
    }
    let zero_modes = real_orthonormal_basis(null_space, 2 * n);
    if zero_modes.len() + 2 * pairs.len() != 2 * n {
        return Err(Error::Numerical(format!(
            "found {} zero-energy Majorana vectors and {} paired modes for {n} modes",
            zero_modes.len(),
            pairs.len()
        )));
    }
    let mut rows: Vec<(f64, Vec<f64>, Vec<f64>)> = zero_modes
        .chunks(2)
        .map(|c| (0.0, c[0].clone(), c[1].clone()))
        .collect();
    rows.extend(pairs);
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut transform = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    let half = 0.5;
    let i = Complex64::new(0.0, 1.0);
    for (p, (_, even, odd)) in rows.iter().enumerate() {
        for q in 0..n {
            let c_even = Complex64::new(even[2 * q], odd[2 * q]);
            let c_odd = Complex64::new(even[2 * q + 1], odd[2 * q + 1]);
            let w1 = half * (c_even - i * c_odd);
            let w2 = half * (c_even + i * c_odd);
            transform[(p, q)] = w1;
            transform[(p, n + q)] = w2;
            transform[(n + p, q)] = w2.conj();
            transform[(n + p, n + q)] = w1.conj();
        }
    }
    let energies: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let constant = qh.constant + shift.re - 0.5 * energies.iter().sum::<f64>();
    Ok(DiagonalForm {
        orbital_energies: energies,
        constant,
        transform,
    })
}

/// Orthonormal basis of the span of `vectors` by modified Gram-Schmidt.
fn real_orthonormal_basis(vectors: Vec<Vec<f64>>, dim: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in vectors {
        for _ in 0..2 {
            for b in &basis {
                let proj: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 && basis.len() < dim {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    basis
}
