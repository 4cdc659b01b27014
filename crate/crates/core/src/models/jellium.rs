use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{Nuclei, PlaneWaveGrid};
use crate::ops::{TermOperator, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JelliumBasis {
    PlaneWave,
    Dual,
}

/// Jellium on `grid` in the plane-wave or plane-wave dual basis, with an
/// optional external potential from `nuclei`.
pub fn jellium(
    grid: &PlaneWaveGrid,
    nuclei: Option<&Nuclei>,
    basis: JelliumBasis,
    spinless: bool,
) -> TermOperator {
    match basis {
        JelliumBasis::PlaneWave => plane_wave(grid, nuclei, spinless),
        JelliumBasis::Dual => dual(grid, nuclei, spinless),
    }
}

fn spins(spinless: bool) -> std::ops::Range<usize> {
    if spinless {
        0..1
    } else {
        0..2
    }
}

/// `Σ_j ζ_j e^{i k_ν·R_j}` for momentum orbital `nu`.
fn structure_factor(grid: &PlaneWaveGrid, nuclei: &Nuclei, nu: usize) -> Complex64 {
    let k = grid.momentum(nu);
    nuclei
        .charges()
        .iter()
        .map(|(zeta, r)| {
            let kr: f64 = k.iter().zip(r).map(|(a, b)| a * b).sum();
            Complex64::from_polar(*zeta, kr)
        })
        .sum()
}

fn nonzero_momenta(grid: &PlaneWaveGrid) -> impl Iterator<Item = usize> + '_ {
    (0..grid.n_points()).filter(|&nu| grid.momentum_ints(nu).iter().any(|&v| v != 0))
}

fn plane_wave(grid: &PlaneWaveGrid, nuclei: Option<&Nuclei>, spinless: bool) -> TermOperator {
    let n = grid.n_points();
    let omega = grid.volume();
    let mode = |p: usize, s: usize| grid.mode(p, s, spinless);
    let mut op = TermOperator::zero(Variant::Fermion);

    for p in 0..n {
        let kinetic = 0.5 * grid.momentum_squared(p);
        for s in spins(spinless) {
            op += TermOperator::fermion(&[(mode(p, s), true), (mode(p, s), false)], kinetic);
        }
    }

    if let Some(nuclei) = nuclei.filter(|n| !n.is_empty()) {
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                let nu = grid.momentum_shift(p, q, -1);
                let c = structure_factor(grid, nuclei, nu)
                    * (-4.0 * PI / omega / grid.momentum_squared(nu));
                for s in spins(spinless) {
                    op += TermOperator::fermion(&[(mode(p, s), true), (mode(q, s), false)], c);
                }
            }
        }
    }

    for nu in nonzero_momenta(grid) {
        let c = 2.0 * PI / omega / grid.momentum_squared(nu);
        for p in 0..n {
            let p_minus = grid.momentum_shift(p, nu, -1);
            for q in 0..n {
                let q_plus = grid.momentum_shift(q, nu, 1);
                for s in spins(spinless) {
                    for t in spins(spinless) {
                        let (a, b) = (mode(p, s), mode(q, t));
                        let (c_, d) = (mode(q_plus, t), mode(p_minus, s));
                        if a == b || c_ == d {
                            continue;
                        }
                        op += TermOperator::fermion(
                            &[(a, true), (b, true), (c_, false), (d, false)],
                            c,
                        );
                    }
                }
            }
        }
    }
    op
}

fn dual(grid: &PlaneWaveGrid, nuclei: Option<&Nuclei>, spinless: bool) -> TermOperator {
    let n = grid.n_points();
    let omega = grid.volume();
    let mode = |p: usize, s: usize| grid.mode(p, s, spinless);
    let mut op = TermOperator::zero(Variant::Fermion);

    for p in 0..n {
        for q in 0..n {
            let c: f64 = (0..n)
                .map(|nu| grid.momentum_squared(nu) * grid.phase_angle_difference(nu, q, p).cos())
                .sum::<f64>()
                / (2.0 * n as f64);
            for s in spins(spinless) {
                op += TermOperator::fermion(&[(mode(p, s), true), (mode(q, s), false)], c);
            }
        }
    }

    if let Some(nuclei) = nuclei.filter(|n| !n.is_empty()) {
        for p in 0..n {
            let c: Complex64 = nonzero_momenta(grid)
                .map(|nu| {
                    let phase = Complex64::from_polar(1.0, -grid.phase_angle(nu, p));
                    structure_factor(grid, nuclei, nu) * phase / grid.momentum_squared(nu)
                })
                .sum::<Complex64>()
                * (-4.0 * PI / omega);
            for s in spins(spinless) {
                op += TermOperator::fermion(&[(mode(p, s), true), (mode(p, s), false)], c);
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            let c: f64 = nonzero_momenta(grid)
                .map(|nu| grid.phase_angle_difference(nu, p, q).cos() / grid.momentum_squared(nu))
                .sum::<f64>()
                * (2.0 * PI / omega);
            for s in spins(spinless) {
                for t in spins(spinless) {
                    let (a, b) = (mode(p, s), mode(q, t));
                    if a == b {
                        continue;
                    }
                    op += TermOperator::fermion(&[(a, true), (a, false), (b, true), (b, false)], c);
                }
            }
        }
    }
    op
}
