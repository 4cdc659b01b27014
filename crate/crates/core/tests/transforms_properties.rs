use num_complex::Complex64;
use proptest::prelude::*;
use secq::linalg::{eigenspectrum, to_sparse, SparseMatrix};
use secq::models::PlaneWaveGrid;
use secq::transforms::{
    bravyi_kitaev, fourier_transform, inverse_fourier_transform, jordan_wigner,
};
use secq::{normal_order, TermOperator, Variant};

fn coefficient() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Random one- and two-body terms on `n` modes, plus their adjoints.
fn hermitian_operator() -> impl Strategy<Value = (usize, TermOperator)> {
    (1usize..=5).prop_flat_map(|n| {
        let one = prop::collection::vec((0..n, 0..n, coefficient()), 0..5);
        let two = prop::collection::vec((0..n, 0..n, 0..n, 0..n, coefficient()), 0..5);
        (Just(n), one, two, -1.0f64..1.0).prop_map(|(n, one, two, constant)| {
            let mut op = TermOperator::identity(Variant::Fermion).scale(constant);
            for (p, q, c) in one {
                op += TermOperator::fermion(&[(p, true), (q, false)], c);
            }
            for (p, q, r, s, c) in two {
                op += TermOperator::fermion(&[(p, true), (q, true), (r, false), (s, false)], c);
            }
            let herm = &op + &op.hermitian_conjugate();
            (n, herm)
        })
    })
}

fn fermion_operator(n: usize) -> impl Strategy<Value = TermOperator> {
    prop::collection::vec(
        (
            prop::collection::vec((0..n, any::<bool>()), 0..=4),
            coefficient(),
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut op = TermOperator::zero(Variant::Fermion);
        for (factors, c) in terms {
            op += TermOperator::fermion(&factors, c);
        }
        op
    })
}

fn largest(op: &TermOperator) -> f64 {
    op.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
}

fn jw_matrix(mode: usize, raise: bool, n: usize) -> SparseMatrix {
    to_sparse(
        &jordan_wigner(&TermOperator::fermion(&[(mode, raise)], 1.0)).unwrap(),
        Some(n),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jordan_wigner_matrices_anticommute(p in 0usize..=4, q in 0usize..=4) {
        let n = 5;
        let a_p = jw_matrix(p, false, n);
        let a_q_dag = jw_matrix(q, true, n);
        let anti = a_p.matmul(&a_q_dag).unwrap().add(&a_q_dag.matmul(&a_p).unwrap()).unwrap();
        let expected = if p == q {
            SparseMatrix::identity(n)
        } else {
            SparseMatrix::from_triplets(n, [])
        };
        prop_assert!(anti.max_difference(&expected).unwrap() <= 1e-14);

        let a_q = jw_matrix(q, false, n);
        let both = a_p.matmul(&a_q).unwrap().add(&a_q.matmul(&a_p).unwrap()).unwrap();
        prop_assert!(both.max_difference(&SparseMatrix::from_triplets(n, [])).unwrap() <= 1e-14);
    }

    #[test]
    fn encodings_share_spectrum((n, op) in hermitian_operator()) {
        let jw = eigenspectrum(&to_sparse(&jordan_wigner(&op).unwrap(), Some(n)).unwrap(), None).unwrap();
        let bk = eigenspectrum(&to_sparse(&bravyi_kitaev(&op, n).unwrap(), Some(n)).unwrap(), None).unwrap();
        prop_assert_eq!(jw.len(), bk.len());
        for (a, b) in jw.iter().zip(&bk) {
            prop_assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn encodings_are_linear(a in fermion_operator(5), b in fermion_operator(5),
                            alpha in coefficient(), beta in coefficient()) {
        let combined = &a.scale(alpha) + &b.scale(beta);
        let jw = jordan_wigner(&combined).unwrap();
        let jw_parts = &jordan_wigner(&a).unwrap().scale(alpha) + &jordan_wigner(&b).unwrap().scale(beta);
        prop_assert!(largest(&(&jw - &jw_parts)) <= 1e-12);

        let bk = bravyi_kitaev(&combined, 5).unwrap();
        let bk_parts = &bravyi_kitaev(&a, 5).unwrap().scale(alpha) + &bravyi_kitaev(&b, 5).unwrap().scale(beta);
        prop_assert!(largest(&(&bk - &bk_parts)) <= 1e-12);
    }

    #[test]
    fn fourier_round_trip(shape in prop_oneof![Just((1usize, 2usize)), Just((1, 3)), Just((1, 4)), Just((2, 2))],
                          spinless in any::<bool>(), seed_op in fermion_operator(8)) {
        let (dims, length) = shape;
        let grid = PlaneWaveGrid::new(dims, length, 1.7).unwrap();
        let modes = grid.n_points() * if spinless { 1 } else { 2 };
        // Fold modes onto the grid.
        let mut op = TermOperator::zero(Variant::Fermion);
        for (term, c) in seed_op.terms() {
            let factors: Vec<(usize, bool)> = term.factors().iter().map(|f| (f.mode % modes, f.symbol.is_raise())).collect();
            op += TermOperator::fermion(&factors, *c);
        }
        let there = fourier_transform(&op, &grid, spinless).unwrap();
        let back = inverse_fourier_transform(&there, &grid, spinless).unwrap();
        let diff = normal_order(&(&back - &op)).unwrap();
        prop_assert!(largest(&diff) <= 1e-9, "deviation {}", largest(&diff));
    }
}
