use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::TermOperator;

/// Nearest-neighbor bond `(i, j)` with `j` to the right of or above `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bond {
    pub from: usize,
    pub to: usize,
    pub horizontal: bool,
}

/// Rectangular lattice with site index `x + x_dim·y`.
///
/// An axis wraps only when it is periodic and longer than two sites; at
/// length two the wrap bond would duplicate the open one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub x_dim: usize,
    pub y_dim: usize,
    pub periodic: bool,
}

impl Lattice {
    pub fn new(x_dim: usize, y_dim: usize, periodic: bool) -> Result<Self> {
        if x_dim == 0 || y_dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "lattice dimensions must be positive, got {x_dim}×{y_dim}"
            )));
        }
        Ok(Lattice {
            x_dim,
            y_dim,
            periodic,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.x_dim * self.y_dim
    }

    pub fn site(&self, x: usize, y: usize) -> usize {
        x + self.x_dim * y
    }

    fn neighbor(&self, coord: usize, len: usize) -> Option<usize> {
        if coord + 1 < len {
            Some(coord + 1)
        } else if self.periodic && len > 2 {
            Some(0)
        } else {
            None
        }
    }

    pub fn bonds(&self) -> Vec<Bond> {
        let mut bonds = Vec::new();
        for y in 0..self.y_dim {
            for x in 0..self.x_dim {
                let from = self.site(x, y);
                if let Some(nx) = self.neighbor(x, self.x_dim) {
                    bonds.push(Bond {
                        from,
                        to: self.site(nx, y),
                        horizontal: true,
                    });
                }
                if let Some(ny) = self.neighbor(y, self.y_dim) {
                    bonds.push(Bond {
                        from,
                        to: self.site(x, ny),
                        horizontal: false,
                    });
                }
            }
        }
        bonds
    }
}

fn up(site: usize) -> usize {
    2 * site
}

fn down(site: usize) -> usize {
    2 * site + 1
}

/// `c·(a_p†a_q + a_q†a_p)`.
fn hop(p: usize, q: usize, c: f64) -> TermOperator {
    TermOperator::fermion(&[(p, true), (q, false)], c)
        + TermOperator::fermion(&[(q, true), (p, false)], c)
}

fn number_product(p: usize, q: usize, c: f64) -> TermOperator {
    TermOperator::fermion(&[(p, true), (p, false), (q, true), (q, false)], c)
}

/// Fermi-Hubbard model
/// `−t Σ_⟨ij⟩σ (a_iσ†a_jσ + h.c.) + U Σ_i n_i↑ n_i↓ − μ Σ_iσ n_iσ`.
///
/// Spin-orbital `2i` is spin up and `2i + 1` spin down. The spinless
/// variant has one mode per site and interaction `U Σ_⟨ij⟩ n_i n_j`.
pub fn fermi_hubbard(
    x_dim: usize,
    y_dim: usize,
    tunneling: f64,
    coulomb: f64,
    chemical_potential: f64,
    periodic: bool,
    spinless: bool,
) -> Result<TermOperator> {
    let lattice = Lattice::new(x_dim, y_dim, periodic)?;
    let mut op = TermOperator::zero(crate::Variant::Fermion);
    if spinless {
        for b in lattice.bonds() {
            op += hop(b.from, b.to, -tunneling);
            op += number_product(b.from, b.to, coulomb);
        }
        for i in 0..lattice.n_sites() {
            op += TermOperator::fermion(&[(i, true), (i, false)], -chemical_potential);
        }
        return Ok(op);
    }
    for b in lattice.bonds() {
        op += hop(up(b.from), up(b.to), -tunneling);
        op += hop(down(b.from), down(b.to), -tunneling);
    }
    for i in 0..lattice.n_sites() {
        op += number_product(up(i), down(i), coulomb);
        for mode in [up(i), down(i)] {
            op += TermOperator::fermion(&[(mode, true), (mode, false)], -chemical_potential);
        }
    }
    Ok(op)
}

/// Bose-Hubbard model
/// `−t Σ_⟨ij⟩ (b_i†b_j + h.c.) + (U/2) Σ_k n_k(n_k − 1) − μ Σ_k n_k`.
pub fn bose_hubbard(
    x_dim: usize,
    y_dim: usize,
    tunneling: f64,
    interaction: f64,
    chemical_potential: f64,
    periodic: bool,
) -> Result<TermOperator> {
    let lattice = Lattice::new(x_dim, y_dim, periodic)?;
    let mut op = TermOperator::zero(crate::Variant::Boson);
    for b in lattice.bonds() {
        op += TermOperator::boson(&[(b.from, true), (b.to, false)], -tunneling);
        op += TermOperator::boson(&[(b.to, true), (b.from, false)], -tunneling);
    }
    for k in 0..lattice.n_sites() {
        op += TermOperator::boson(
            &[(k, true), (k, false), (k, true), (k, false)],
            0.5 * interaction,
        );
        op += TermOperator::boson(
            &[(k, true), (k, false)],
            -0.5 * interaction - chemical_potential,
        );
    }
    Ok(op)
}

/// Mean-field d-wave model: hopping `−t` plus pairing
/// `Δ_b (a_i↑†a_j↓† − a_i↓†a_j↑†) + h.c.` with `Δ_b = +Δsc/2` on
/// horizontal bonds and `−Δsc/2` on vertical ones.
pub fn mean_field_dwave(
    x_dim: usize,
    y_dim: usize,
    tunneling: f64,
    sc_gap: f64,
    periodic: bool,
) -> Result<TermOperator> {
    let lattice = Lattice::new(x_dim, y_dim, periodic)?;
    let mut op = TermOperator::zero(crate::Variant::Fermion);
    for b in lattice.bonds() {
        op += hop(up(b.from), up(b.to), -tunneling);
        op += hop(down(b.from), down(b.to), -tunneling);
        let gap = Complex64::new(
            if b.horizontal {
                0.5 * sc_gap
            } else {
                -0.5 * sc_gap
            },
            0.0,
        );
        let pairing = TermOperator::fermion(&[(up(b.from), true), (down(b.to), true)], gap)
            - TermOperator::fermion(&[(down(b.from), true), (up(b.to), true)], gap);
        op += pairing.hermitian_conjugate();
        op += pairing;
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::normal_order;

    #[test]
    fn bond_counts() {
        assert_eq!(Lattice::new(4, 1, true).unwrap().bonds().len(), 4);
        assert_eq!(Lattice::new(4, 1, false).unwrap().bonds().len(), 3);
        assert_eq!(Lattice::new(2, 2, true).unwrap().bonds().len(), 4);
        assert_eq!(Lattice::new(3, 3, true).unwrap().bonds().len(), 18);
        assert!(Lattice::new(1, 1, true).unwrap().bonds().is_empty());
        assert!(Lattice::new(0, 1, true).is_err());
    }

    #[test]
    fn single_site_hubbard() {
        let op = fermi_hubbard(1, 1, 3.0, 4.0, 0.0, true, false).unwrap();
        assert_eq!(
            op,
            TermOperator::fermion(&[(0, true), (0, false), (1, true), (1, false)], 4.0)
        );
    }

    #[test]
    fn single_site_bose_hubbard() {
        let op = normal_order(&bose_hubbard(1, 1, 1.0, 1.5, 0.5, true).unwrap()).unwrap();
        let expected = TermOperator::boson(&[(0, true), (0, true), (0, false), (0, false)], 0.75)
            + TermOperator::boson(&[(0, true), (0, false)], -0.5);
        assert!(op.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn dwave_without_gap_is_hopping() {
        let d = mean_field_dwave(2, 2, 1.0, 0.0, true).unwrap();
        let h = fermi_hubbard(2, 2, 1.0, 0.0, 0.0, true, false).unwrap();
        assert_eq!(d, h);
    }
}
