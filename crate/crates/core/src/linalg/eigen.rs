use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseMatrix;
use crate::error::{Error, Result};

/// Largest qubit count solved densely; bigger matrices use Lanczos.
pub const DENSE_QUBIT_LIMIT: usize = 12;

/// Ascending eigenvalues with matching unit eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

/// Eigen-decomposition of a dense Hermitian matrix with ascending values.
/// Eigenvectors are the columns of the returned matrix.
pub fn eigh(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    // The QR sweep can stall into NaN when a zero diagonal meets tiny
    // off-diagonal entries. Shifting by twice the row-sum norm keeps every
    // eigenvalue away from zero and leaves the eigenvectors unchanged.
    let shift = 2.0
        * (0..n)
            .map(|r| m.row(r).iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max);
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] += shift;
    }
    let eig = SymmetricEigen::new(shifted);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k] - shift).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Ascending eigenvalues of a Hermitian sparse matrix: all of them when `k`
/// is `None`, otherwise the lowest `k`.
pub fn eigenspectrum(m: &SparseMatrix, k: Option<usize>) -> Result<Vec<f64>> {
    Ok(eigensystem(m, k)?.values)
}

/// Like [`eigenspectrum`] but also returns eigenvectors.
///
/// Matrices on at most [`DENSE_QUBIT_LIMIT`] qubits are solved densely.
/// Larger ones need an explicit `k` and use Lanczos iteration, which
/// resolves distinct eigenvalues but returns a degenerate level once.
pub fn eigensystem(m: &SparseMatrix, k: Option<usize>) -> Result<EigenPairs> {
    let deviation = m.hermiticity_deviation();
    if deviation > 1e-10 {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = m.dim();
    let k = k.map(|k| k.min(dim));
    if m.n_qubits() <= DENSE_QUBIT_LIMIT {
        let (values, vectors) = eigh(&m.to_dense());
        let take = k.unwrap_or(dim);
        return Ok(EigenPairs {
            values: values[..take].to_vec(),
            vectors: (0..take)
                .map(|c| vectors.column(c).iter().copied().collect())
                .collect(),
        });
    }
    match k {
        Some(k) => lanczos(m, k),
        None => Err(Error::SizeLimit {
            what: "qubit count for a full dense spectrum",
            value: m.n_qubits(),
            limit: DENSE_QUBIT_LIMIT,
        }),
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    norm
}

/// Lanczos with full reorthogonalization from a fixed pseudo-random start.
fn lanczos(m: &SparseMatrix, k: usize) -> Result<EigenPairs> {
    let dim = m.dim();
    let max_steps = dim.min(400.max(4 * k + 40));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    normalize(&mut v);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut previous: Option<Vec<f64>> = None;
    loop {
        let mut w = m.matvec(&v);
        let a = dot(&v, &w).re;
        basis.push(v);
        alpha.push(a);
        // Two passes of classical Gram-Schmidt against the whole basis.
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let steps = basis.len();
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let exhausted = norm < 1e-12 || steps >= max_steps;
        if steps >= k || exhausted {
            let (ritz, _) = tridiagonal_eigh(&alpha, &beta);
            let current: Vec<f64> = ritz.iter().take(k).copied().collect();
            let converged = previous.as_ref().is_some_and(|p| {
                p.len() == current.len()
                    && p.iter().zip(&current).all(|(a, b)| (a - b).abs() < 1e-13)
            });
            if converged || exhausted {
                break;
            }
            previous = Some(current);
        }
        beta.push(norm);
        v = w.into_iter().map(|x| x / norm).collect();
    }

    let (ritz, vecs) = tridiagonal_eigh(&alpha, &beta);
    let take = k.min(ritz.len());
    let mut values = Vec::with_capacity(take);
    let mut vectors = Vec::with_capacity(take);
    for c in 0..take {
        let mut x = vec![Complex64::default(); dim];
        for (j, b) in basis.iter().enumerate() {
            let s = vecs[(j, c)];
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += s * bi);
        }
        normalize(&mut x);
        values.push(ritz[c]);
        vectors.push(x);
    }
    Ok(EigenPairs { values, vectors })
}

fn tridiagonal_eigh(alpha: &[f64], beta: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let n = alpha.len();
    // Same shift as in `eigh`.
    let shift = 2.0
        * (0..n)
            .map(|i| {
                alpha[i].abs()
                    + i.checked_sub(1).map_or(0.0, |j| beta[j].abs())
                    + beta.get(i).map_or(0.0, |b| b.abs())
            })
            .fold(0.0, f64::max);
    let t = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            alpha[r] + shift
        } else if r + 1 == c {
            beta[r]
        } else if c + 1 == r {
            beta[c]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k] - shift).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}
