mod common;

use common::{checks, fcidump, fcidump_strategy};
use num_complex::Complex64;
use proptest::prelude::*;
use secq::io::{tensor_from_json, tensor_to_json, MolecularArchive};
use secq::tensors::InteractionTensor;

fn complex_tensor(n: usize, raw: &[f64]) -> InteractionTensor {
    let mut it = raw.iter().copied().cycle();
    let mut next = || Complex64::new(it.next().unwrap(), it.next().unwrap());
    let one = ndarray::Array2::from_shape_fn((n, n), |_| next());
    let two = ndarray::Array4::from_shape_fn((n, n, n, n), |_| next());
    InteractionTensor::new(next(), one, two).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fcidump_import_emit_is_a_fixed_point(dump in fcidump_strategy()) {
        checks::fcidump_fixed_point(&dump)?;
    }

    #[test]
    fn tensor_json_round_trip(n in 1usize..=4, raw in prop::collection::vec(-2.0f64..2.0, 300)) {
        let t = complex_tensor(n, &raw);
        let back = tensor_from_json(&tensor_to_json(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn archive_round_trip(norb in 1usize..=3, raw in prop::collection::vec(-2.0f64..2.0, 120)) {
        let dump = fcidump(norb, &raw);
        let archive = MolecularArchive::new(Vec::new(), "sto-3g", (norb % 2 + 1) as u32, 0, norb, dump.to_interaction_tensor()).unwrap();
        let back = MolecularArchive::from_json(&archive.to_json().unwrap()).unwrap();
        prop_assert!(back.integrals().unwrap().max_difference(archive.integrals().unwrap()) == 0.0);
        prop_assert!(back == archive);
    }
}
