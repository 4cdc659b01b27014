use std::collections::BTreeSet;

use ndarray::{Array2, Array4};
use num_complex::Complex64;

use super::InteractionTensor;
use crate::error::{Error, Result};

/// Freezes the doubly occupied spatial orbitals `occupied` and keeps
/// `active`, dropping everything else.
///
/// Returns the frozen-core energy (including `h₀`) and the reduced tensor
/// over the active spin-orbitals, whose own constant is zero. Spatial
/// orbital `i` maps to spin-orbitals `2i` and `2i + 1`.
pub fn active_space(
    t: &InteractionTensor,
    occupied: &[usize],
    active: &[usize],
) -> Result<(Complex64, InteractionTensor)> {
    let n_spatial = t.n_modes() / 2;
    let mut seen = BTreeSet::new();
    for &i in occupied.iter().chain(active) {
        if i >= n_spatial {
            return Err(Error::InvalidArgument(format!(
                "orbital {i} out of range for {n_spatial} spatial orbitals"
            )));
        }
        if !seen.insert(i) {
            return Err(Error::InvalidArgument(format!(
                "orbital {i} listed more than once"
            )));
        }
    }
    let spin =
        |list: &[usize]| -> Vec<usize> { list.iter().flat_map(|&i| [2 * i, 2 * i + 1]).collect() };
    let core = spin(occupied);
    let act = spin(active);
    let h1 = &t.one_body;
    let h2 = &t.two_body;

    let mut constant = t.constant;
    for &i in &core {
        constant += h1[[i, i]];
        for &j in &core {
            constant += 0.5 * (h2[[i, j, j, i]] - h2[[i, j, i, j]]);
        }
    }

    let m = act.len();
    let mut one = Array2::zeros((m, m));
    for (a, &u) in act.iter().enumerate() {
        for (b, &v) in act.iter().enumerate() {
            let mut value = h1[[u, v]];
            for &i in &core {
                value += 0.5
                    * (h2[[i, u, v, i]] + h2[[u, i, i, v]] - h2[[i, u, i, v]] - h2[[u, i, v, i]]);
            }
            one[[a, b]] = value;
        }
    }
    let two = Array4::from_shape_fn((m, m, m, m), |(p, q, r, s)| {
        h2[[act[p], act[q], act[r], act[s]]]
    });
    Ok((
        constant,
        InteractionTensor::new(Complex64::default(), one, two)?,
    ))
}
