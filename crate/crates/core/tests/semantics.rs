mod common;

use std::collections::BTreeMap;

use common::{random_formula, random_frame, random_set, D};
use kripke::formula::{and, parse};
use kripke::semantics::{satisfiable_in_frame, satisfies, truth_set, valid_on_frame};
use kripke::{Frame, Model, Relation, DEFAULT_BUDGET};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_case() -> impl Strategy<Value = u64> {
    any::<u64>()
}

#[test]
fn budget_is_checked_before_work() {
    let f = Frame::mono(D, Relation::total(8));
    let phi = parse("p0 & p1 & p2 -> <d>p0", f.sig()).unwrap();
    let e = valid_on_frame(&f, &phi, 1000).unwrap_err();
    assert_eq!(e.code(), "E_BUDGET");
}

#[test]
fn d0_model_check() {
    let f = Frame::from_named_pairs(
        kripke::Signature::mono(D),
        &["1", "0prime", "0prime2"],
        [("d", "1", "0prime"), ("d", "1", "0prime2")],
    )
    .unwrap();
    let g = BTreeMap::from([(0, f.set_of(&["0prime"]).unwrap())]);
    let m = Model::new(f, g).unwrap();
    let phi = parse("[d](true & ~<d>true -> p0) | [d](true & ~<d>true -> ~p0)", m.frame.sig()).unwrap();
    assert!(!satisfies(&m, "1", &phi).unwrap());
    assert!(satisfies(&m, "0prime", &phi).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjunction_valid_iff_both(seed in arb_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_frame(&mut rng, 4);
        let a = random_formula(&mut rng, 3, 2, &[D]);
        let b = random_formula(&mut rng, 3, 2, &[D]);
        let both = valid_on_frame(&f, &and(a.clone(), b.clone()), DEFAULT_BUDGET).unwrap().valid;
        let each = valid_on_frame(&f, &a, DEFAULT_BUDGET).unwrap().valid
            && valid_on_frame(&f, &b, DEFAULT_BUDGET).unwrap().valid;
        prop_assert_eq!(both, each);
    }

    #[test]
    fn inner_subframe_satisfiability_lifts(seed in arb_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_frame(&mut rng, 5);
        let phi = random_formula(&mut rng, 3, 2, &[D]);
        for w in f.worlds() {
            let g = f.generated_subframe(w).unwrap();
            if satisfiable_in_frame(&g, &phi, DEFAULT_BUDGET).unwrap().satisfiable {
                prop_assert!(satisfiable_in_frame(&f, &phi, DEFAULT_BUDGET).unwrap().satisfiable);
            }
        }
    }

    #[test]
    fn validity_witness_refutes(seed in arb_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_frame(&mut rng, 4);
        let phi = random_formula(&mut rng, 3, 2, &[D]);
        let v = valid_on_frame(&f, &phi, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(v.valid, v.witness.is_none());
        if let Some(w) = v.witness {
            let m = Model::new(f.clone(), w.valuation).unwrap();
            prop_assert!(!truth_set(&m, &phi).unwrap().contains(w.world));
        }
    }

    #[test]
    fn circ_translation_on_models(seed in arb_case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_frame(&mut rng, 5);
        let n = f.len();
        let g = BTreeMap::from([(0, random_set(&mut rng, n)), (1, random_set(&mut rng, n))]);
        let m = Model::new(f, g).unwrap();
        let mc = m.reflexive_closure();
        let phi = random_formula(&mut rng, 3, 2, &[D]);
        prop_assert_eq!(truth_set(&mc, &phi).unwrap(), truth_set(&m, &phi.circ()).unwrap());
    }
}
