//! Fermion-to-qubit encodings.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::{Factor, Symbol, TermOperator, Variant};

fn require_fermion(op: &TermOperator, operation: &'static str) -> Result<()> {
    if op.variant() != Variant::Fermion {
        return Err(Error::UnsupportedVariant {
            variant: op.variant(),
            operation,
        });
    }
    Ok(())
}

/// Substitutes a qubit operator for every ladder factor and expands.
fn encode<F>(op: &TermOperator, mut ladder: F) -> TermOperator
where
    F: FnMut(usize, bool) -> TermOperator,
{
    let mut cache: HashMap<(usize, bool), TermOperator> = HashMap::new();
    let mut out = TermOperator::zero(Variant::Qubit);
    for (term, coeff) in op.terms() {
        let mut product = TermOperator::identity(Variant::Qubit).scale(*coeff);
        for f in term.factors() {
            let key = (f.mode, f.symbol.is_raise());
            let image = cache.entry(key).or_insert_with(|| ladder(key.0, key.1));
            product = product.try_mul(image).expect("qubit operands");
            if product.is_empty() {
                break;
            }
        }
        out += product;
    }
    out
}

/// Two-term qubit operator `½·P1 ± (i/2)·P2` from sorted factor lists.
fn half_pair(first: Vec<Factor>, second: Vec<Factor>, raise: bool) -> TermOperator {
    let sign = if raise { -0.5 } else { 0.5 };
    let mut op = TermOperator::from_factors(Variant::Qubit, first, 0.5).expect("valid Pauli term");
    op += TermOperator::from_factors(Variant::Qubit, second, Complex64::new(0.0, sign))
        .expect("valid Pauli term");
    op
}

/// Jordan-Wigner image of a single ladder factor:
/// `a_p = ½(X_p + iY_p) Z_0…Z_{p−1}`, `a_p† = ½(X_p − iY_p) Z_0…Z_{p−1}`.
pub fn jordan_wigner_ladder(mode: usize, raise: bool) -> TermOperator {
    let string = |axis| {
        let mut f: Vec<Factor> = (0..mode).map(|q| Factor::new(q, Symbol::Z)).collect();
        f.push(Factor::new(mode, axis));
        f
    };
    half_pair(string(Symbol::X), string(Symbol::Y), raise)
}

/// Jordan-Wigner transform of a fermion operator.
pub fn jordan_wigner(op: &TermOperator) -> Result<TermOperator> {
    require_fermion(op, "Jordan-Wigner transform")?;
    Ok(encode(op, jordan_wigner_ladder))
}

/// Index sets of the Fenwick-tree Bravyi-Kitaev encoding. Qubit `j` stores
/// the parity of modes `j & (j + 1) ..= j`.
#[derive(Clone, Debug)]
pub struct FenwickTree {
    n_modes: usize,
    update: Vec<Vec<usize>>,
    parity: Vec<Vec<usize>>,
    flip: Vec<Vec<usize>>,
}

impl FenwickTree {
    pub fn new(n_modes: usize) -> Self {
        let mut update = Vec::with_capacity(n_modes);
        let mut parity = Vec::with_capacity(n_modes);
        let mut flip = Vec::with_capacity(n_modes);
        for j in 0..n_modes {
            let mut u = Vec::new();
            let mut k = j | (j + 1);
            while k < n_modes {
                u.push(k);
                k |= k + 1;
            }
            let mut p = Vec::new();
            let mut f = Vec::new();
            let low = j & (j + 1);
            let mut k = j as isize - 1;
            while k >= 0 {
                p.push(k as usize);
                if k as usize >= low {
                    f.push(k as usize);
                }
                k = (k & (k + 1)) - 1;
            }
            p.sort_unstable();
            f.sort_unstable();
            update.push(u);
            parity.push(p);
            flip.push(f);
        }
        FenwickTree {
            n_modes,
            update,
            parity,
            flip,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Qubits above `j` whose stored parity includes mode `j`.
    pub fn update_set(&self, j: usize) -> &[usize] {
        &self.update[j]
    }

    /// Qubits whose combined parity is the parity of modes `0..j`.
    pub fn parity_set(&self, j: usize) -> &[usize] {
        &self.parity[j]
    }

    /// Qubits whose parity, added to qubit `j`, gives the occupation of mode `j`.
    pub fn flip_set(&self, j: usize) -> &[usize] {
        &self.flip[j]
    }

    /// Parity set minus flip set.
    pub fn remainder_set(&self, j: usize) -> Vec<usize> {
        self.parity[j]
            .iter()
            .copied()
            .filter(|k| self.flip[j].binary_search(k).is_err())
            .collect()
    }

    /// Bravyi-Kitaev image of a single ladder factor:
    /// `a_j† = ½ X_U X_j Z_P − (i/2) X_U Y_j Z_R`.
    pub fn ladder(&self, j: usize, raise: bool) -> TermOperator {
        let build = |axis, zs: &[usize]| {
            let mut f: Vec<Factor> = zs.iter().map(|&q| Factor::new(q, Symbol::Z)).collect();
            f.push(Factor::new(j, axis));
            f.extend(self.update[j].iter().map(|&q| Factor::new(q, Symbol::X)));
            f
        };
        half_pair(
            build(Symbol::X, &self.parity[j]),
            build(Symbol::Y, &self.remainder_set(j)),
            raise,
        )
    }
}

/// Bravyi-Kitaev transform on `n_qubits` qubits.
pub fn bravyi_kitaev(op: &TermOperator, n_qubits: usize) -> Result<TermOperator> {
    require_fermion(op, "Bravyi-Kitaev transform")?;
    if op.n_modes() > n_qubits {
        return Err(Error::InvalidArgument(format!(
            "operator acts on {} modes but only {n_qubits} qubits were requested",
            op.n_modes()
        )));
    }
    let tree = FenwickTree::new(n_qubits);
    Ok(encode(op, |j, raise| tree.ladder(j, raise)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jw_creation_on_mode_zero() {
        let op = TermOperator::fermion(&[(0, true)], 1.0);
        let jw = jordan_wigner(&op).unwrap();
        assert_eq!(jw.coefficient_of("X0").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(jw.coefficient_of("Y0").unwrap(), Complex64::new(0.0, -0.5));
        assert_eq!(jw.len(), 2);
    }

    #[test]
    fn jw_lowering_carries_z_string() {
        let jw = jordan_wigner(&TermOperator::fermion(&[(2, false)], 1.0)).unwrap();
        assert_eq!(
            jw.coefficient_of("Z0 Z1 X2").unwrap(),
            Complex64::new(0.5, 0.0)
        );
        assert_eq!(
            jw.coefficient_of("Z0 Z1 Y2").unwrap(),
            Complex64::new(0.0, 0.5)
        );
    }

    #[test]
    fn jw_number_operator() {
        let jw = jordan_wigner(&TermOperator::fermion(&[(3, true), (3, false)], 1.0)).unwrap();
        let expected = TermOperator::identity(Variant::Qubit).scale(0.5)
            - TermOperator::parse(Variant::Qubit, "Z3", 0.5).unwrap();
        assert_eq!(jw, expected);
    }

    #[test]
    fn fenwick_sets_for_eight_modes() {
        let t = FenwickTree::new(8);
        assert_eq!(t.update_set(0), &[1, 3, 7]);
        assert_eq!(t.update_set(4), &[5, 7]);
        assert_eq!(t.parity_set(7), &[3, 5, 6]);
        assert_eq!(t.flip_set(7), &[3, 5, 6]);
        assert_eq!(t.parity_set(6), &[3, 5]);
        assert!(t.flip_set(6).is_empty());
        assert_eq!(t.remainder_set(5), vec![3]);
    }

    #[test]
    fn single_mode_encodings_agree() {
        let op = TermOperator::fermion(&[(0, true)], 1.0);
        assert_eq!(bravyi_kitaev(&op, 1).unwrap(), jordan_wigner(&op).unwrap());
    }

    #[test]
    fn bk_rejects_too_few_qubits() {
        let op = TermOperator::fermion(&[(3, true)], 1.0);
        assert!(bravyi_kitaev(&op, 3).is_err());
    }

    #[test]
    fn bk_hop_support_is_logarithmic() {
        let hop = TermOperator::fermion(&[(0, true), (3, false)], 1.0)
            + TermOperator::fermion(&[(3, true), (0, false)], 1.0);
        let bk = bravyi_kitaev(&hop, 4).unwrap();
        assert!(bk.terms().all(|(t, _)| t.len() <= 3));
    }
}
