//! Input generators shared by the property suites and the acceptance run.
#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use secq::io::Fcidump;
use secq::{TermOperator, Variant};

pub fn coefficient() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Ladder term text such as `"3^ 0 2"`.
pub fn ladder_term(max_mode: usize, max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((0..max_mode, any::<bool>()), 0..=max_len).prop_map(|factors| {
        factors
            .iter()
            .map(|&(m, raise)| {
                if raise {
                    format!("{m}^")
                } else {
                    m.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    })
}

pub fn pauli_term(n_qubits: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(0usize..4, n_qubits).prop_map(|letters| {
        letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(q, &l)| format!("{}{q}", ["", "X", "Y", "Z"][l]))
            .collect::<Vec<_>>()
            .join(" ")
    })
}

pub fn quad_term() -> impl Strategy<Value = String> {
    prop::collection::vec((0usize..4, any::<bool>()), 0..=4).prop_map(|factors| {
        factors
            .iter()
            .map(|&(m, q)| format!("{}{m}", if q { "q" } else { "p" }))
            .collect::<Vec<_>>()
            .join(" ")
    })
}

pub fn assemble(variant: Variant, terms: &[(String, Complex64)]) -> TermOperator {
    let mut op = TermOperator::zero(variant);
    for (text, c) in terms {
        op += TermOperator::parse(variant, text, *c).unwrap();
    }
    op
}

pub fn ladder_operator(
    variant: Variant,
    max_mode: usize,
    max_len: usize,
) -> impl Strategy<Value = TermOperator> {
    prop::collection::vec((ladder_term(max_mode, max_len), coefficient()), 0..6)
        .prop_map(move |terms| assemble(variant, &terms))
}

pub fn qubit_operator(n: usize) -> impl Strategy<Value = TermOperator> {
    prop::collection::vec((pauli_term(n), coefficient()), 0..6)
        .prop_map(|t| assemble(Variant::Qubit, &t))
}

/// Random operator of any of the four variants.
pub fn any_operator() -> impl Strategy<Value = TermOperator> {
    prop_oneof![
        ladder_operator(Variant::Fermion, 8, 4),
        ladder_operator(Variant::Boson, 8, 4),
        qubit_operator(5),
        prop::collection::vec((quad_term(), coefficient()), 0..6)
            .prop_map(|t| assemble(Variant::Quad, &t)),
    ]
}

pub fn ladder(variant: Variant, mode: usize, raise: bool) -> TermOperator {
    match variant {
        Variant::Fermion => TermOperator::fermion(&[(mode, raise)], 1.0),
        _ => TermOperator::boson(&[(mode, raise)], 1.0),
    }
}

pub fn largest(op: &TermOperator) -> f64 {
    op.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
}

/// Real integrals with the full eight-fold symmetry of `(ij|kl)`.
pub fn fcidump(norb: usize, raw: &[f64]) -> Fcidump {
    let mut it = raw.iter().copied().cycle();
    let mut dump = Fcidump::new(norb, norb, 0);
    dump.constant = it.next().unwrap();
    for i in 0..norb {
        for j in 0..=i {
            let v = it.next().unwrap();
            dump.one_body[[i, j]] = v;
            dump.one_body[[j, i]] = v;
        }
    }
    for i in 0..norb {
        for j in 0..norb {
            for k in 0..norb {
                for l in 0..norb {
                    let v = it.next().unwrap();
                    for idx in [
                        (i, j, k, l),
                        (j, i, k, l),
                        (i, j, l, k),
                        (j, i, l, k),
                        (k, l, i, j),
                        (l, k, i, j),
                        (k, l, j, i),
                        (l, k, j, i),
                    ] {
                        dump.two_body[[idx.0, idx.1, idx.2, idx.3]] = v;
                    }
                }
            }
        }
    }
    dump
}

pub fn fcidump_strategy() -> impl Strategy<Value = Fcidump> {
    (1usize..=3, prop::collection::vec(-2.0f64..2.0, 120))
        .prop_map(|(norb, raw)| fcidump(norb, &raw))
}

pub mod checks {
    use super::*;
    use proptest::test_runner::TestCaseError;
    use secq::io::{emit_fcidump, operator_from_json, operator_to_json, parse_fcidump};
    use secq::linalg::to_sparse;
    use secq::normal_order;
    use secq::transforms::jordan_wigner;

    pub fn anticommutation(p: usize, q: usize) -> Result<(), TestCaseError> {
        let f = Variant::Fermion;
        let mixed = &(&ladder(f, p, false) * &ladder(f, q, true))
            + &(&ladder(f, q, true) * &ladder(f, p, false));
        let expected = if p == q {
            TermOperator::identity(f)
        } else {
            TermOperator::zero(f)
        };
        prop_assert_eq!(normal_order(&mixed).unwrap(), expected);
        let raised = &(&ladder(f, p, true) * &ladder(f, q, true))
            + &(&ladder(f, q, true) * &ladder(f, p, true));
        prop_assert!(normal_order(&raised).unwrap().is_empty());
        let lowered = &(&ladder(f, p, false) * &ladder(f, q, false))
            + &(&ladder(f, q, false) * &ladder(f, p, false));
        prop_assert!(normal_order(&lowered).unwrap().is_empty());
        Ok(())
    }

    pub fn boson_commutation(p: usize, q: usize) -> Result<(), TestCaseError> {
        let b = Variant::Boson;
        let comm = &(&ladder(b, p, false) * &ladder(b, q, true))
            - &(&ladder(b, q, true) * &ladder(b, p, false));
        let expected = if p == q {
            TermOperator::identity(b)
        } else {
            TermOperator::zero(b)
        };
        prop_assert_eq!(normal_order(&comm).unwrap(), expected);
        let raised = &(&ladder(b, p, true) * &ladder(b, q, true))
            - &(&ladder(b, q, true) * &ladder(b, p, true));
        prop_assert!(normal_order(&raised).unwrap().is_empty());
        Ok(())
    }

    pub fn idempotent(op: &TermOperator) -> Result<(), TestCaseError> {
        let once = normal_order(op).unwrap();
        prop_assert_eq!(normal_order(&once).unwrap(), once);
        Ok(())
    }

    /// `op` must act on at most six modes.
    pub fn preserves_matrix(op: &TermOperator) -> Result<(), TestCaseError> {
        let before = to_sparse(&jordan_wigner(op).unwrap(), Some(6)).unwrap();
        let after =
            to_sparse(&jordan_wigner(&normal_order(op).unwrap()).unwrap(), Some(6)).unwrap();
        prop_assert!(before.max_difference(&after).unwrap() <= 1e-12);
        Ok(())
    }

    pub fn morphism(n: usize, a: &TermOperator, b: &TermOperator) -> Result<(), TestCaseError> {
        let ma = to_sparse(a, Some(n)).unwrap();
        let mb = to_sparse(b, Some(n)).unwrap();
        let product = to_sparse(&(a * b), Some(n)).unwrap();
        prop_assert!(product.max_difference(&ma.matmul(&mb).unwrap()).unwrap() <= 1e-12);
        let sum = to_sparse(&(a + b), Some(n)).unwrap();
        prop_assert!(sum.max_difference(&ma.add(&mb).unwrap()).unwrap() <= 1e-12);
        Ok(())
    }

    pub fn string_round_trip(op: &TermOperator) -> Result<(), TestCaseError> {
        prop_assert_eq!(
            &TermOperator::parse_operator(op.variant(), &op.to_string()).unwrap(),
            op
        );
        Ok(())
    }

    pub fn json_round_trip(op: &TermOperator) -> Result<(), TestCaseError> {
        prop_assert_eq!(
            &operator_from_json(&operator_to_json(op).unwrap()).unwrap(),
            op
        );
        Ok(())
    }

    pub fn fcidump_fixed_point(dump: &Fcidump) -> Result<(), TestCaseError> {
        let first = parse_fcidump(&emit_fcidump(dump)).unwrap();
        let second = parse_fcidump(&emit_fcidump(&first)).unwrap();
        prop_assert!(
            first
                .to_interaction_tensor()
                .max_difference(&second.to_interaction_tensor())
                <= 1e-12
        );
        prop_assert!(
            first
                .to_interaction_tensor()
                .max_difference(&dump.to_interaction_tensor())
                <= 1e-12
        );
        prop_assert_eq!(emit_fcidump(&first), emit_fcidump(&second));
        Ok(())
    }
}
