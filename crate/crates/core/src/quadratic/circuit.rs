use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{diagonalize, QuadraticHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::eigh;

const ELIMINATION_TOL: f64 = 1e-10;

/// Elementary gate of a Gaussian-state preparation circuit.
///
/// `Givens` rotates adjacent modes `(i, j = i + 1)` with
/// `U a_k† U† = Σ_l g_lk a_l†`, `g = [[cos θ, −sin θ], [e^{iφ} sin θ, e^{iφ} cos θ]]`.
/// `ParticleHole` exchanges `a_p` and `a_p†`, acting as `X_p Z_{p+1} … Z_{N−1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircuitOp {
    Givens {
        i: usize,
        j: usize,
        theta: f64,
        phi: f64,
    },
    ParticleHole {
        mode: usize,
    },
}

/// Gates in application order, to be applied to the basis state that
/// occupies `start_orbitals`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub operations: Vec<CircuitOp>,
    pub start_orbitals: Vec<usize>,
}

impl CircuitDescription {
    pub fn givens_count(&self) -> usize {
        self.operations
            .iter()
            .filter(|op| matches!(op, CircuitOp::Givens { .. }))
            .count()
    }
}

/// The 2×2 Givens matrix `g`.
fn givens_matrix(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [e * s, e * c],
    ]
}

/// Rotation with `c·w_j + s·e^{iφ}·w_{j+1} = 0` (or with `e^{−iφ}` when
/// `conjugate` is set), moving the weight of `w_j` into `w_{j+1}`.
fn zeroing_angles(wj: Complex64, wk: Complex64, conjugate: bool) -> (f64, f64) {
    let theta = wj.norm().atan2(wk.norm());
    let phase = wj.arg() - wk.arg() + PI;
    (theta, if conjugate { -phase } else { phase })
}

/// Applies `M → M·g` on columns `(j, j+1)`, or `M → M·conj(g)`.
fn rotate_columns(m: &mut DMatrix<Complex64>, j: usize, g: &[[Complex64; 2]; 2], conjugate: bool) {
    let g = if conjugate {
        [
            [g[0][0].conj(), g[0][1].conj()],
            [g[1][0].conj(), g[1][1].conj()],
        ]
    } else {
        *g
    };
    for r in 0..m.nrows() {
        let (a, b) = (m[(r, j)], m[(r, j + 1)]);
        m[(r, j)] = a * g[0][0] + b * g[1][0];
        m[(r, j + 1)] = a * g[0][1] + b * g[1][1];
    }
}

/// Unitary whose last row is `x` (unit norm), completed by Gram-Schmidt.
fn rotation_with_last_row(x: &DVector<Complex64>) -> DMatrix<Complex64> {
    let k = x.len();
    let mut rows: Vec<DVector<Complex64>> = vec![x.clone()];
    for e in 0..k {
        if rows.len() == k {
            break;
        }
        let mut v = DVector::<Complex64>::zeros(k);
        v[e] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for r in &rows {
                let proj = r.dotc(&v);
                v -= r * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            rows.push(v / Complex64::new(norm, 0.0));
        }
    }
    // Last row is x itself, so (R·W)[last] = Σ_r x_r W[r].
    let mut r = DMatrix::<Complex64>::zeros(k, k);
    for (i, v) in rows
        .iter()
        .skip(1)
        .chain(std::iter::once(&rows[0]))
        .enumerate()
    {
        for c in 0..k {
            r[(i, c)] = v[c];
        }
    }
    r
}

/// Unit `x` with `xᵀ·a = 0`, from the null space of `a a†`.
fn left_null_vector(a: &DMatrix<Complex64>) -> DVector<Complex64> {
    let k = a.nrows();
    if a.ncols() == 0 {
        let mut x = DVector::zeros(k);
        x[k - 1] = Complex64::new(1.0, 0.0);
        return x;
    }
    let gram = a * a.adjoint();
    let (_, vectors) = eigh(&gram);
    vectors.column(0).map(|v| v.conj())
}

/// Circuit preparing the ground state of `qh` from a basis state.
///
/// Particle-conserving input gives at most `η(N − η)` Givens rotations on
/// top of the `η` occupied start orbitals. General input starts from the
/// vacuum and adds particle-hole gates.
pub fn gaussian_circuit(qh: &QuadraticHamiltonian) -> Result<CircuitDescription> {
    let form = diagonalize(qh)?;
    let n = qh.n_modes();
    if qh.is_particle_conserving() {
        // Rows of the creation matrix: b_p† = Σ_q conj(T_pq) a_q†.
        let occupied: Vec<usize> = (0..n)
            .filter(|&p| form.orbital_energies[p] < -1e-12)
            .collect();
        let creation = DMatrix::from_fn(occupied.len(), n, |r, q| {
            form.transform[(occupied[r], q)].conj()
        });
        slater_circuit(creation)
    } else {
        let (w1, w2) = form.annihilator_blocks();
        general_circuit(w1, w2)
    }
}

fn slater_circuit(mut o: DMatrix<Complex64>) -> Result<CircuitDescription> {
    let mut ops = Vec::new();
    let mut occupied = Vec::new();
    let mut m = o.ncols();
    while m > 0 {
        let col = m - 1;
        let k = o.nrows();
        if k == 0 {
            break;
        }
        if k == m {
            occupied.extend(0..m);
            break;
        }
        let column_weight: f64 = o.column(col).iter().map(|v| v.norm_sqr()).sum();
        if column_weight <= ELIMINATION_TOL * ELIMINATION_TOL {
            o = o.columns(0, col).into_owned();
            m -= 1;
            continue;
        }
        // Combination of rows vanishing on columns 0..k−1 (k−1 constraints).
        let x = left_null_vector(&o.columns(0, k - 1).into_owned());
        let rot = rotation_with_last_row(&x);
        o = &rot * &o;
        let last = k - 1;
        for j in (k - 1)..col {
            let (wj, wk) = (o[(last, j)], o[(last, j + 1)]);
            if wj.norm() <= ELIMINATION_TOL {
                continue;
            }
            let (theta, phi) = zeroing_angles(wj, wk, true);
            rotate_columns(&mut o, j, &givens_matrix(theta, phi), true);
            ops.push(CircuitOp::Givens {
                i: j,
                j: j + 1,
                theta,
                phi,
            });
        }
        let residual = o
            .row(last)
            .columns(0, col)
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if residual > 1e-8 {
            return Err(Error::Numerical(format!(
                "Givens elimination left residual {residual:e}"
            )));
        }
        occupied.push(col);
        o = o.view((0, 0), (last, col)).into_owned();
        m -= 1;
    }
    ops.reverse();
    occupied.sort_unstable();
    Ok(CircuitDescription {
        operations: ops,
        start_orbitals: occupied,
    })
}

fn general_circuit(
    mut w1: DMatrix<Complex64>,
    mut w2: DMatrix<Complex64>,
) -> Result<CircuitDescription> {
    let mut ops = Vec::new();
    let n = w1.ncols();
    for col in (0..n).rev() {
        let k = w1.nrows();
        let x = left_null_vector(&w2.columns(0, col).into_owned());
        let rot = rotation_with_last_row(&x);
        w1 = &rot * &w1;
        w2 = &rot * &w2;
        let last = k - 1;
        if w2[(last, col)].norm() > ELIMINATION_TOL {
            for r in 0..k {
                std::mem::swap(&mut w1[(r, col)], &mut w2[(r, col)]);
            }
            ops.push(CircuitOp::ParticleHole { mode: col });
        }
        for j in 0..col {
            let (wj, wk) = (w1[(last, j)], w1[(last, j + 1)]);
            if wj.norm() <= ELIMINATION_TOL {
                continue;
            }
            let (theta, phi) = zeroing_angles(wj, wk, false);
            let g = givens_matrix(theta, phi);
            rotate_columns(&mut w1, j, &g, false);
            rotate_columns(&mut w2, j, &g, true);
            ops.push(CircuitOp::Givens {
                i: j,
                j: j + 1,
                theta,
                phi,
            });
        }
        let residual = w1
            .row(last)
            .columns(0, col)
            .iter()
            .chain(w2.row(last).columns(0, col + 1).iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if residual > 1e-8 {
            return Err(Error::Numerical(format!(
                "Bogoliubov elimination left residual {residual:e}"
            )));
        }
        w1 = w1.view((0, 0), (last, col)).into_owned();
        w2 = w2.view((0, 0), (last, col)).into_owned();
    }
    ops.reverse();
    Ok(CircuitDescription {
        operations: ops,
        start_orbitals: Vec::new(),
    })
}

/// Applies one gate to an `n`-mode state in place. Mode 0 is the most
/// significant bit of the basis index.
pub fn apply_operation(state: &mut [Complex64], n: usize, op: &CircuitOp) -> Result<()> {
    match *op {
        CircuitOp::Givens { i, j, theta, phi } => {
            if j != i + 1 || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "Givens rotation must act on adjacent modes inside {n} modes, got ({i}, {j})"
                )));
            }
            let g = givens_matrix(theta, phi);
            let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
            let bi = 1usize << (n - 1 - i);
            let bj = 1usize << (n - 1 - j);
            for idx in 0..state.len() {
                if idx & (bi | bj) != 0 {
                    continue;
                }
                let (s10, s01, s11) = (idx | bi, idx | bj, idx | bi | bj);
                let (a, b) = (state[s10], state[s01]);
                state[s10] = g[0][0] * a + g[0][1] * b;
                state[s01] = g[1][0] * a + g[1][1] * b;
                state[s11] *= det;
            }
        }
        CircuitOp::ParticleHole { mode } => {
            if mode >= n {
                return Err(Error::InvalidArgument(format!(
                    "mode {mode} outside {n} modes"
                )));
            }
            let bit = 1usize << (n - 1 - mode);
            let below = bit - 1;
            let old = state.to_vec();
            for (idx, amp) in old.into_iter().enumerate() {
                let sign = if (idx & below).count_ones() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                state[idx ^ bit] = amp * sign;
            }
        }
    }
    Ok(())
}

/// State produced by running `circuit` on its start state over `n` modes.
pub fn simulate_circuit(circuit: &CircuitDescription, n: usize) -> Result<Vec<Complex64>> {
    let mut index = 0usize;
    for &p in &circuit.start_orbitals {
        if p >= n {
            return Err(Error::InvalidArgument(format!(
                "start orbital {p} outside {n} modes"
            )));
        }
        index |= 1 << (n - 1 - p);
    }
    let mut state = vec![Complex64::default(); 1 << n];
    state[index] = Complex64::new(1.0, 0.0);
    for op in &circuit.operations {
        apply_operation(&mut state, n, op)?;
    }
    Ok(state)
}
