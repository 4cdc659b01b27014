use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::{normal_order, TermOperator, Variant};
use crate::quadratic::QuadraticHamiltonian;
use crate::tensors::InteractionTensor;
use nalgebra::DMatrix;

/// `h₀ + Σ h_pq a_p†a_q + ½ Σ h_pqrs a_p†a_q†a_r a_s`, skipping zero entries.
pub fn tensor_to_fermion(t: &InteractionTensor) -> TermOperator {
    let mut op = TermOperator::identity(Variant::Fermion).scale(t.constant);
    for ((p, q), &c) in t.one_body.indexed_iter() {
        if c != Complex64::default() {
            op += TermOperator::fermion(&[(p, true), (q, false)], c);
        }
    }
    for ((p, q, r, s), &c) in t.two_body.indexed_iter() {
        if c != Complex64::default() {
            op += TermOperator::fermion(&[(p, true), (q, true), (r, false), (s, false)], 0.5 * c);
        }
    }
    op
}

/// Reads `M`, `Δ` and the constant of a quadratic fermion operator.
///
/// The operator is normal-ordered and must be Hermitian to 1e-10. Terms of
/// any other shape are an error unless `ignore_incompatible` is set, in
/// which case they are dropped. The chemical potential is zero.
pub fn extract_quadratic(
    op: &TermOperator,
    ignore_incompatible: bool,
) -> Result<QuadraticHamiltonian> {
    if op.variant() != Variant::Fermion {
        return Err(Error::UnsupportedVariant {
            variant: op.variant(),
            operation: "extract_quadratic",
        });
    }
    let ordered = normal_order(op)?;
    let anti = normal_order(&ordered.try_sub(&ordered.hermitian_conjugate())?)?;
    let deviation = anti.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    if deviation > 1e-10 {
        return Err(Error::NotHermitian { deviation });
    }

    let n = ordered.n_modes();
    let mut constant = 0.0;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    let mut delta = DMatrix::<Complex64>::zeros(n, n);
    let mut lowered = Vec::new();
    for (term, &c) in ordered.terms() {
        let f = term.factors();
        match f {
            [] => constant += c.re,
            [a, b] if a.symbol.is_raise() && b.symbol.is_lower() => m[(a.mode, b.mode)] += c,
            [a, b] if a.symbol.is_raise() && b.symbol.is_raise() => {
                delta[(a.mode, b.mode)] += c;
                delta[(b.mode, a.mode)] -= c;
            }
            [a, b] if a.symbol.is_lower() && b.symbol.is_lower() => {
                lowered.push((a.mode, b.mode, c))
            }
            _ if ignore_incompatible => {}
            _ => return Err(Error::NonQuadratic(term.to_string())),
        }
    }
    // a_p a_q carries −Δ*_pq, fixed by the raising terms through hermiticity.
    for (p, q, c) in lowered {
        let expected = -delta[(p, q)].conj();
        if (c - expected).norm() > 1e-10 {
            return Err(Error::Inconsistent(format!(
                "annihilation pair [{p} {q}] has coefficient {c} but the pairing matrix implies {expected}"
            )));
        }
    }
    QuadraticHamiltonian::new(m, delta, 0.0, constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{Array2, Array4};

    #[test]
    fn zero_tensor_is_constant() {
        let mut t = InteractionTensor::zeros(3);
        t.constant = Complex64::new(0.7, 0.0);
        assert_eq!(
            tensor_to_fermion(&t),
            TermOperator::identity(Variant::Fermion).scale(0.7)
        );
    }

    #[test]
    fn single_mode_energy() {
        let t = InteractionTensor::new(
            Complex64::default(),
            Array2::from_elem((1, 1), Complex64::new(1.5, 0.0)),
            Array4::zeros((1, 1, 1, 1)),
        )
        .unwrap();
        assert_eq!(
            tensor_to_fermion(&t),
            TermOperator::fermion(&[(0, true), (0, false)], 1.5)
        );
    }

    #[test]
    fn quartic_term_is_rejected() {
        let op = TermOperator::fermion(&[(0, true), (1, true), (1, false), (0, false)], 1.0);
        assert!(matches!(
            extract_quadratic(&op, false),
            Err(Error::NonQuadratic(_))
        ));
        let qh = extract_quadratic(&op, true).unwrap();
        assert_eq!(qh.n_modes(), 2);
        assert!(qh.hermitian_part().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn pairing_round_trip() {
        let mut m = DMatrix::<Complex64>::zeros(3, 3);
        m[(0, 1)] = Complex64::new(0.2, -0.3);
        m[(1, 0)] = Complex64::new(0.2, 0.3);
        m[(2, 2)] = Complex64::new(-1.0, 0.0);
        let mut d = DMatrix::<Complex64>::zeros(3, 3);
        d[(0, 2)] = Complex64::new(0.4, 0.1);
        d[(2, 0)] = -d[(0, 2)];
        let qh = QuadraticHamiltonian::new(m, d, 0.0, 0.5).unwrap();
        let back = extract_quadratic(&qh.to_fermion_operator(), false).unwrap();
        assert_eq!(back.n_modes(), 3);
        assert!((back.hermitian_part() - qh.hermitian_part()).norm() < 1e-14);
        assert!((back.antisymmetric_part() - qh.antisymmetric_part()).norm() < 1e-14);
        assert_eq!(back.constant(), 0.5);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let op = TermOperator::fermion(&[(0, true), (1, false)], 1.0);
        assert!(matches!(
            extract_quadratic(&op, false),
            Err(Error::NotHermitian { .. })
        ));
    }
}
