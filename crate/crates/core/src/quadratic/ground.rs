use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{diagonalize, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{ladder_matrix, SparseMatrix};

pub const DEFAULT_DENSE_MODE_LIMIT: usize = 14;

const SEEDS: [u64; 3] = [0x9a55, 0x51a7e, 0xfe11];

/// Ground energy and normalized ground state of `qh` in the Jordan-Wigner
/// occupation basis, for at most [`DEFAULT_DENSE_MODE_LIMIT`] modes.
pub fn jw_gaussian_ground(qh: &QuadraticHamiltonian) -> Result<(f64, Vec<Complex64>)> {
    jw_gaussian_ground_with_limit(qh, DEFAULT_DENSE_MODE_LIMIT)
}

pub fn jw_gaussian_ground_with_limit(
    qh: &QuadraticHamiltonian,
    limit: usize,
) -> Result<(f64, Vec<Complex64>)> {
    let n = qh.n_modes();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "mode count",
            value: n,
            limit,
        });
    }
    let form = diagonalize(qh)?;
    let (w1, w2) = form.annihilator_blocks();
    let lower: Vec<SparseMatrix> = (0..n).map(|q| ladder_matrix(n, q, false)).collect();
    let raise: Vec<SparseMatrix> = (0..n).map(|q| ladder_matrix(n, q, true)).collect();

    // The state is annihilated by b_p for empty modes and by b_p† for
    // filled ones; projecting a random vector with the product of all these
    // operators leaves exactly that state.
    let apply = |p: usize, fill: bool, v: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); v.len()];
        for q in 0..n {
            let (c_lower, c_raise) = if fill {
                (w2[(p, q)].conj(), w1[(p, q)].conj())
            } else {
                (w1[(p, q)], w2[(p, q)])
            };
            for (c, m) in [(c_lower, &lower[q]), (c_raise, &raise[q])] {
                if c.norm() > 0.0 {
                    for (o, x) in out.iter_mut().zip(m.matvec(v)) {
                        *o += c * x;
                    }
                }
            }
        }
        out
    };

    let filled: Vec<bool> = form.orbital_energies.iter().map(|&e| e < -1e-12).collect();
    let energy = form.constant
        + form
            .orbital_energies
            .iter()
            .filter(|&&e| e < -1e-12)
            .sum::<f64>();
    for seed in SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut collapsed = false;
        for (p, &fill) in filled.iter().enumerate() {
            state = apply(p, fill, &state);
            let norm = state.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                collapsed = true;
                break;
            }
            state.iter_mut().for_each(|v| *v /= norm);
        }
        if !collapsed {
            return Ok((energy, state));
        }
    }
    Err(Error::Numerical(
        "Gaussian ground-state projection collapsed".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn positive_diagonal_gives_vacuum() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5), c(1.5)]));
        let qh = QuadraticHamiltonian::particle_conserving(m, 0.3).unwrap();
        let (energy, state) = jw_gaussian_ground(&qh).unwrap();
        assert!((energy - 0.3).abs() < 1e-14);
        assert!((state[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_mode_hopping_half_filling() {
        let t = 0.7;
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = c(-t);
        m[(1, 0)] = c(-t);
        let qh = QuadraticHamiltonian::particle_conserving(m, 1.0).unwrap();
        let (energy, state) = jw_gaussian_ground(&qh).unwrap();
        assert!((energy - (1.0 - t)).abs() < 1e-12);
        // (|10⟩ + |01⟩)/√2 up to phase.
        assert!((state[1].norm() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((state[1] - state[2]).norm() < 1e-12);
    }

    #[test]
    fn limit_is_enforced() {
        let qh = QuadraticHamiltonian::particle_conserving(DMatrix::zeros(3, 3), 0.0).unwrap();
        assert!(matches!(
            jw_gaussian_ground_with_limit(&qh, 2),
            Err(Error::SizeLimit { .. })
        ));
    }
}
