use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::PlaneWaveGrid;
use crate::ops::{normal_order, Factor, TermOperator, Variant};

const FOURIER_COMPRESSION: f64 = 1e-9;

/// Rewrites momentum-mode operators in the dual (position) basis using
/// `c_ν† = N^{-½} Σ_p a_p† e^{−i k_ν·r_p}`, then normal-orders and drops
/// coefficients at or below 1e-9.
pub fn fourier_transform(
    op: &TermOperator,
    grid: &PlaneWaveGrid,
    spinless: bool,
) -> Result<TermOperator> {
    transform(op, grid, spinless, false)
}

/// Inverse of [`fourier_transform`]: the same substitution with conjugate
/// phases.
pub fn inverse_fourier_transform(
    op: &TermOperator,
    grid: &PlaneWaveGrid,
    spinless: bool,
) -> Result<TermOperator> {
    transform(op, grid, spinless, true)
}

fn transform(
    op: &TermOperator,
    grid: &PlaneWaveGrid,
    spinless: bool,
    inverse: bool,
) -> Result<TermOperator> {
    if op.variant() != Variant::Fermion {
        return Err(Error::UnsupportedVariant {
            variant: op.variant(),
            operation: "fourier_transform",
        });
    }
    let n = grid.n_points();
    let per_orbital = if spinless { 1 } else { 2 };
    if let Some(m) = op.max_mode() {
        if m >= n * per_orbital {
            return Err(Error::InvalidArgument(format!(
                "mode {m} is outside a grid of {n} orbitals{}",
                if spinless { "" } else { " with spin" }
            )));
        }
    }
    let norm = (n as f64).sqrt().recip();
    let mut cache: HashMap<Factor, TermOperator> = HashMap::new();
    let mut expand = |f: &Factor| -> TermOperator {
        cache
            .entry(*f)
            .or_insert_with(|| {
                let (orbital, spin) = (f.mode / per_orbital, f.mode % per_orbital);
                let raise = f.symbol.is_raise();
                let mut sum = TermOperator::zero(Variant::Fermion);
                for other in 0..n {
                    let angle = if inverse {
                        grid.phase_angle(other, orbital)
                    } else {
                        -grid.phase_angle(orbital, other)
                    };
                    let phase = Complex64::from_polar(norm, if raise { angle } else { -angle });
                    sum += TermOperator::fermion(&[(other * per_orbital + spin, raise)], phase);
                }
                sum
            })
            .clone()
    };

    let mut out = TermOperator::zero(Variant::Fermion);
    for (term, &c) in op.terms() {
        let mut product = TermOperator::identity(Variant::Fermion).scale(c);
        for f in term.factors() {
            product = product.try_mul(&expand(f))?;
        }
        out += product;
    }
    normal_order(&out)?.compress(FOURIER_COMPRESSION)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_identity() {
        let grid = PlaneWaveGrid::new(1, 1, 1.0).unwrap();
        let op = TermOperator::fermion(&[(0, true), (0, false)], 2.0)
            + TermOperator::fermion(&[(1, true), (0, false), (1, false)], 0.5);
        let ft = fourier_transform(&op, &grid, false).unwrap();
        assert!(ft.approx_eq(&normal_order(&op).unwrap(), 1e-15));
    }

    #[test]
    fn round_trip() {
        let grid = PlaneWaveGrid::new(1, 3, 1.0).unwrap();
        let op = TermOperator::fermion(&[(0, true), (2, false)], Complex64::new(0.3, 0.2))
            + TermOperator::fermion(&[(1, true), (2, true), (0, false), (1, false)], 1.1);
        let there = fourier_transform(&op, &grid, true).unwrap();
        let back = inverse_fourier_transform(&there, &grid, true).unwrap();
        assert!(back.approx_eq(&normal_order(&op).unwrap(), 1e-9));
    }

    #[test]
    fn mode_outside_grid() {
        let grid = PlaneWaveGrid::new(1, 2, 1.0).unwrap();
        let op = TermOperator::fermion(&[(4, true)], 1.0);
        assert!(fourier_transform(&op, &grid, false).is_err());
        assert!(fourier_transform(&TermOperator::fermion(&[(3, true)], 1.0), &grid, false).is_ok());
    }
}
