use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Cubic real-space grid of `length^dimensions` points in a cell of side
/// `scale`, together with its dual momentum lattice.
///
/// Orbital `p` has grid indices `g` with axis 0 varying fastest. Its
/// position is `g·scale/length` and its momentum is `2πν/scale` with
/// `ν = g − ⌊length/2⌋`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveGrid {
    dimensions: usize,
    length: usize,
    scale: f64,
}

impl PlaneWaveGrid {
    pub fn new(dimensions: usize, length: usize, scale: f64) -> Result<Self> {
        if !(1..=3).contains(&dimensions) {
            return Err(Error::InvalidArgument(format!(
                "grid dimension must be 1, 2 or 3, got {dimensions}"
            )));
        }
        if length < 1 {
            return Err(Error::InvalidArgument(
                "grid length must be at least 1".into(),
            ));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "grid scale must be positive, got {scale}"
            )));
        }
        Ok(PlaneWaveGrid {
            dimensions,
            length,
            scale,
        })
    }

    pub fn dimensions(&self) -> usize {
        self.dimensions
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn n_points(&self) -> usize {
        self.length.pow(self.dimensions as u32)
    }

    /// Cell volume Ω.
    pub fn volume(&self) -> f64 {
        self.scale.powi(self.dimensions as i32)
    }

    pub fn grid_indices(&self, p: usize) -> Vec<usize> {
        let mut rest = p;
        (0..self.dimensions)
            .map(|_| {
                let g = rest % self.length;
                rest /= self.length;
                g
            })
            .collect()
    }

    pub fn orbital(&self, grid_indices: &[usize]) -> usize {
        grid_indices
            .iter()
            .rev()
            .fold(0, |acc, &g| acc * self.length + g)
    }

    /// Integer momentum vector ν of orbital `p`, in the centered range.
    pub fn momentum_ints(&self, p: usize) -> Vec<i64> {
        let half = (self.length / 2) as i64;
        self.grid_indices(p)
            .into_iter()
            .map(|g| g as i64 - half)
            .collect()
    }

    pub fn momentum(&self, p: usize) -> Vec<f64> {
        self.momentum_ints(p)
            .into_iter()
            .map(|v| 2.0 * PI * v as f64 / self.scale)
            .collect()
    }

    pub fn momentum_squared(&self, p: usize) -> f64 {
        self.momentum(p).iter().map(|k| k * k).sum()
    }

    pub fn position(&self, p: usize) -> Vec<f64> {
        self.grid_indices(p)
            .into_iter()
            .map(|g| g as f64 * self.scale / self.length as f64)
            .collect()
    }

    /// Orbital whose momentum is `ν_p + sign·ν_q`, wrapped into the
    /// centered range.
    pub fn momentum_shift(&self, p: usize, q: usize, sign: i64) -> usize {
        let half = (self.length / 2) as i64;
        let l = self.length as i64;
        let indices: Vec<usize> = self
            .momentum_ints(p)
            .iter()
            .zip(self.momentum_ints(q))
            .map(|(a, b)| ((a + sign * b + half).rem_euclid(l)) as usize)
            .collect();
        self.orbital(&indices)
    }

    /// `k_ν · r_p` for momentum orbital `nu` and position orbital `p`,
    /// reduced exactly on the lattice.
    pub fn phase_angle(&self, nu: usize, p: usize) -> f64 {
        let l = self.length as i64;
        let dot: i64 = self
            .momentum_ints(nu)
            .iter()
            .zip(self.grid_indices(p))
            .map(|(v, g)| v * g as i64)
            .sum();
        2.0 * PI * dot.rem_euclid(l) as f64 / l as f64
    }

    /// `k_ν · (r_p − r_q)`, reduced exactly on the lattice.
    pub fn phase_angle_difference(&self, nu: usize, p: usize, q: usize) -> f64 {
        let l = self.length as i64;
        let dot: i64 = self
            .momentum_ints(nu)
            .iter()
            .zip(self.grid_indices(p).into_iter().zip(self.grid_indices(q)))
            .map(|(v, (a, b))| v * (a as i64 - b as i64))
            .sum();
        2.0 * PI * dot.rem_euclid(l) as f64 / l as f64
    }

    /// Spin-orbital index of spatial orbital `p`.
    pub fn mode(&self, p: usize, spin: usize, spinless: bool) -> usize {
        if spinless {
            p
        } else {
            2 * p + spin
        }
    }
}

/// Point charges `ζ_j` at positions `R_j`, reduced into the cell.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Nuclei {
    charges: Vec<(f64, Vec<f64>)>,
}

impl Nuclei {
    pub fn new(grid: &PlaneWaveGrid, charges: Vec<(f64, Vec<f64>)>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(charges.len());
        for (zeta, position) in charges {
            if zeta.is_nan() || zeta <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "nuclear charge must be positive, got {zeta}"
                )));
            }
            if position.len() != grid.dimensions() {
                return Err(Error::DimensionMismatch(format!(
                    "nucleus position has {} components for a {}-dimensional grid",
                    position.len(),
                    grid.dimensions()
                )));
            }
            let position = position
                .into_iter()
                .map(|x| x.rem_euclid(grid.scale()))
                .collect();
            reduced.push((zeta, position));
        }
        Ok(Nuclei { charges: reduced })
    }

    pub fn charges(&self) -> &[(f64, Vec<f64>)] {
        &self.charges
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }
}
