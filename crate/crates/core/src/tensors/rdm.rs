use ndarray::{Array2, Array4};
use num_complex::Complex64;

use super::InteractionTensor;
use crate::error::{Error, Result};
use crate::linalg::{check_normalized, ladder_matrix};

/// One- and two-particle reduced density matrices,
/// `D1_pq = ⟨a_p†a_q⟩` and `D2_pqrs = ⟨a_p†a_q†a_r a_s⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct RdmTensor {
    pub one_rdm: Array2<Complex64>,
    pub two_rdm: Array4<Complex64>,
}

impl RdmTensor {
    pub fn new(one_rdm: Array2<Complex64>, two_rdm: Array4<Complex64>) -> Result<Self> {
        let n = one_rdm.nrows();
        if one_rdm.ncols() != n || two_rdm.shape() != [n, n, n, n] {
            return Err(Error::DimensionMismatch("RDM shapes disagree".into()));
        }
        Ok(RdmTensor { one_rdm, two_rdm })
    }

    pub fn n_modes(&self) -> usize {
        self.one_rdm.nrows()
    }

    pub fn scale(&self, factor: f64) -> RdmTensor {
        RdmTensor {
            one_rdm: self.one_rdm.mapv(|v| v * factor),
            two_rdm: self.two_rdm.mapv(|v| v * factor),
        }
    }
}

/// `h₀ + Σ D1_pq h_pq + ½ Σ D2_pqrs h_pqrs`, which must be real to 1e-9.
pub fn rdm_energy(rdm: &RdmTensor, t: &InteractionTensor) -> Result<f64> {
    if rdm.n_modes() != t.n_modes() {
        return Err(Error::DimensionMismatch(format!(
            "RDMs cover {} modes but the tensor has {}",
            rdm.n_modes(),
            t.n_modes()
        )));
    }
    let one: Complex64 = rdm
        .one_rdm
        .iter()
        .zip(t.one_body.iter())
        .map(|(d, h)| d * h)
        .sum();
    let two: Complex64 = rdm
        .two_rdm
        .iter()
        .zip(t.two_body.iter())
        .map(|(d, h)| d * h)
        .sum();
    let energy = t.constant + one + 0.5 * two;
    if energy.im.abs() > 1e-9 {
        return Err(Error::Inconsistent(format!(
            "RDM energy has imaginary part {:e}",
            energy.im
        )));
    }
    Ok(energy.re)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Reduced density matrices of a normalized `n`-mode state in the
/// Jordan-Wigner occupation basis.
pub fn rdm_from_state(state: &[Complex64], n: usize) -> Result<RdmTensor> {
    if state.len() != 1usize << n {
        return Err(Error::DimensionMismatch(format!(
            "state length {} is not 2^{n}",
            state.len()
        )));
    }
    check_normalized(state)?;
    let lower: Vec<_> = (0..n).map(|p| ladder_matrix(n, p, false)).collect();
    let single: Vec<Vec<Complex64>> = lower.iter().map(|a| a.matvec(state)).collect();
    // pair[r][s] = a_r a_s |ψ⟩
    let pair: Vec<Vec<Vec<Complex64>>> = lower
        .iter()
        .map(|ar| single.iter().map(|s| ar.matvec(s)).collect())
        .collect();
    let one = Array2::from_shape_fn((n, n), |(p, q)| inner(&single[p], &single[q]));
    let two = Array4::from_shape_fn((n, n, n, n), |(p, q, r, s)| {
        if p == q || r == s {
            Complex64::default()
        } else {
            inner(&pair[q][p], &pair[r][s])
        }
    });
    Ok(RdmTensor {
        one_rdm: one,
        two_rdm: two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_state(n: usize, index: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::default(); 1 << n];
        v[index] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn vacuum_has_zero_rdms() {
        let rdm = rdm_from_state(&basis_state(3, 0), 3).unwrap();
        assert!(rdm.one_rdm.iter().all(|v| *v == Complex64::default()));
        assert!(rdm.two_rdm.iter().all(|v| *v == Complex64::default()));
    }

    #[test]
    fn single_particle_in_mode_zero() {
        // Mode 0 is the most significant bit.
        let rdm = rdm_from_state(&basis_state(3, 0b100), 3).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let expected = if p == 0 && q == 0 { 1.0 } else { 0.0 };
                assert_eq!(rdm.one_rdm[[p, q]], Complex64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn two_particle_trace_and_antisymmetry() {
        let rdm = rdm_from_state(&basis_state(3, 0b110), 3).unwrap();
        let trace: Complex64 = (0..3).map(|p| rdm.one_rdm[[p, p]]).sum();
        assert_eq!(trace, Complex64::new(2.0, 0.0));
        assert_eq!(rdm.two_rdm[[0, 1, 1, 0]], Complex64::new(1.0, 0.0));
        assert_eq!(rdm.two_rdm[[1, 0, 1, 0]], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn energy_of_zero_rdms_is_constant() {
        let mut t = InteractionTensor::zeros(2);
        t.constant = Complex64::new(-0.3, 0.0);
        t.one_body[[0, 0]] = Complex64::new(2.0, 0.0);
        let zero = RdmTensor::new(Array2::zeros((2, 2)), Array4::zeros((2, 2, 2, 2))).unwrap();
        assert_eq!(rdm_energy(&zero, &t).unwrap(), -0.3);
        assert!(rdm_from_state(&[Complex64::new(2.0, 0.0), Complex64::default()], 1).is_err());
    }
}
