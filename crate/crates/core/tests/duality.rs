mod common;

use common::{all_frames, random_formula, random_frame, D};
use kripke::algebra::{formula_to_term, parse_equation, term_to_formula, BaoTerm, FiniteBao};
use kripke::corpus::formulas::{five, four, t, u};
use kripke::semantics::valid_on_frame;
use kripke::DEFAULT_BUDGET;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn double_dual_sampled_six_worlds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let f = random_frame(&mut rng, 6);
        let a = FiniteBao::complex_algebra(&f);
        assert!(a.ultrafilter_frame().isomorphism(&f).is_some());
        assert!(a.canonical_extension().isomorphism(&a).is_some());
    }
}

#[test]
fn equation_validity_matches_frame_validity() {
    let pool = [five(D, 0), five(D, 1), five(D, 2), u(1, D, D).unwrap(), t(D), four(D)];
    for f in all_frames(2) {
        let a = FiniteBao::complex_algebra(&f);
        for phi in &pool {
            let fv = valid_on_frame(&f, phi, DEFAULT_BUDGET).unwrap();
            let ev = a.validates_equation(&formula_to_term(phi), &BaoTerm::One, DEFAULT_BUDGET).unwrap();
            assert_eq!(fv.valid, ev.holds);
            assert_eq!(fv.witness.map(|w| w.valuation), ev.witness);
        }
    }
}

#[test]
fn term_translation_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let phi = random_formula(&mut rng, 5, 3, &[D, "e"]);
        assert_eq!(term_to_formula(&formula_to_term(&phi)), phi);
    }
}

#[test]
fn equation_text_round_trip() {
    let (l, r) = parse_equation("<d>(v0 + v1) = <d>v0 + <d>v1").unwrap();
    let (l2, r2) = parse_equation(&format!("{l} = {r}")).unwrap();
    assert_eq!((l, r), (l2, r2));
}

#[test]
fn json_round_trip() {
    let f = common::random_frame(&mut ChaCha8Rng::seed_from_u64(3), 5);
    let a = FiniteBao::complex_algebra(&f);
    let back = FiniteBao::from_json_str(&a.to_json()).unwrap();
    assert!(back.isomorphism(&a).is_some());
}
