use dgl_core::dg_leavitt::{presentation_json, structural_laws, LeavittAlgebra};
use dgl_core::fdalgebra::{radical_quiver, AlgebraPresentation, RadicalQuiverData};
use dgl_core::fixtures;
use dgl_core::foundation::Field;
use dgl_core::quiver::parse_quiver_file;
use proptest::prelude::*;

#[test]
fn every_fixture_survives_the_pipeline() {
    for (name, text) in fixtures::QUIVERS {
        let pq = parse_quiver_file(text, Field::Rational).unwrap();
        let ap = AlgebraPresentation::from_parsed(&pq, 16).unwrap();
        let rq = radical_quiver(&ap);
        assert!(rq.check_mu_associativity().holds(), "{name}");
        let json = rq.to_json();
        let back = RadicalQuiverData::from_json(&json.to_string()).unwrap();
        assert_eq!(back.to_json(), json, "{name}: JSON round trip");
        let lv = LeavittAlgebra::from_radical(&rq);
        let p = presentation_json(&lv);
        assert_eq!(
            p["generators"].as_array().unwrap().len(),
            2 * lv.quiver().num_arrows(),
            "{name}"
        );
    }
}

#[test]
fn laws_hold_over_a_prime_field() {
    let text = fixtures::truncated_text(3).replace("field: Q", "field: Fp 3");
    let pq = parse_quiver_file(&text, Field::Rational).unwrap();
    let rq = radical_quiver(&AlgebraPresentation::from_parsed(&pq, 16).unwrap());
    assert_eq!(rq.field(), Field::prime(3).unwrap());
    for law in structural_laws(&rq, 60, 5) {
        assert!(law.passed, "{}: {:?}", law.law, law.counterexample);
    }
}

#[test]
fn randomized_tables_are_associative_and_lawful() {
    for seed in 0..4 {
        let rq = fixtures::randomized(seed);
        assert!(rq.check_mu_associativity().holds());
        for law in structural_laws(&rq, 60, seed) {
            assert!(law.passed, "seed {seed}: {}: {:?}", law.law, law.counterexample);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn basis_changes_keep_mu_associative(seed in any::<u64>(), which in 0usize..4) {
        let base = match which {
            0 => fixtures::rose(2),
            1 => fixtures::radical("nonlocal"),
            2 => fixtures::radical("square"),
            _ => fixtures::radical("rsz-rose2"),
        };
        let rq = fixtures::randomize_basis(&base, seed);
        prop_assert!(rq.check_mu_associativity().holds());
        prop_assert_eq!(rq.quiver().num_arrows(), base.quiver().num_arrows());
    }
}
