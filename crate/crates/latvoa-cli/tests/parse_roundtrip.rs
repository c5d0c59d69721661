use latvoa::fock::{Charge, FockTerm, FockVector, LambdaData, Space};
use latvoa::lattice::{Cocycle, Lattice};
use latvoa::{q, qr, Q};
use latvoa_cli::expr::{parse_element, ParseError};
use proptest::prelude::*;

fn a2_with_lambda() -> Space {
    Space::new(Lattice::a2(), Cocycle::a2(), Some(LambdaData { pairings: vec![q(0), qr(1, 3)], norm: q(0) })).unwrap()
}

fn rational() -> impl Strategy<Value = Q> {
    (-7i64..=7, 1i64..=4).prop_map(|(n, d)| qr(n, d))
}

fn term() -> impl Strategy<Value = FockTerm> {
    (
        prop::collection::vec((0usize..2, 1u32..=4), 0..4),
        prop::collection::vec(rational(), 2),
        any::<bool>(),
    )
        .prop_map(|(f, v, lam)| FockTerm::new(f, Charge { v, lam }))
}

fn vector() -> impl Strategy<Value = FockVector> {
    prop::collection::vec((term(), rational()), 0..5).prop_map(|ts| {
        let mut v = FockVector::zero();
        for (t, c) in ts {
            v.add_term(t, c);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, rng_seed: prop::test_runner::RngSeed::Fixed(2024), ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_format(v in vector()) {
        let s = a2_with_lambda();
        let text = s.format(&v);
        if v.is_zero() {
            prop_assert_eq!(text, "0");
        } else {
            prop_assert_eq!(parse_element(&text, &s).unwrap(), v);
        }
    }
}

#[test]
fn spec_examples() {
    let r1 = Space::rank_one(1);
    assert_eq!(parse_element("a(-1)E[1]", &r1).unwrap(), r1.term(&[(0, 1)], &[1]));
    let want = r1.term(&[(0, 2), (0, 1)], &[0]).scaled(&qr(1, 2)).minus(&r1.exp(&[2]));
    assert_eq!(parse_element("1/2*a(-2)a(-1)vac - E[2]", &r1).unwrap(), want);
    let s = a2_with_lambda();
    let v = parse_element("E[0,1;L]", &s).unwrap();
    let t = v.terms.keys().next().unwrap();
    assert!(t.charge.lam);
    assert_eq!(t.charge.v, vec![q(0), q(1)]);
}

#[test]
fn factor_order_and_signs() {
    let r1 = Space::rank_one(1);
    let a = parse_element("a(-1)a(-2)vac", &r1).unwrap();
    let b = parse_element("a(-2)a(-1)vac", &r1).unwrap();
    assert_eq!(a, b);
    assert_eq!(parse_element("-E[1] + E[1]", &r1).unwrap(), FockVector::zero());
    assert_eq!(parse_element(" - 3/2 * E[ 1 ] ", &r1).unwrap(), r1.exp(&[1]).scaled(&qr(-3, 2)));
    assert_eq!(parse_element("-3/2*E[1]", &r1).unwrap(), r1.exp(&[1]).scaled(&qr(-3, 2)));
}

#[test]
fn errors() {
    let r1 = Space::rank_one(1);
    assert_eq!(parse_element("a(0)vac", &r1), Err(ParseError::NonnegativeMode { position: 2 }));
    assert_eq!(parse_element("a(2)vac", &r1), Err(ParseError::NonnegativeMode { position: 2 }));
    assert_eq!(parse_element("E[1] + c(-1)vac", &r1), Err(ParseError::UnknownName { position: 7, name: "c".into() }));
    assert!(matches!(parse_element("E[1,2]", &r1), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_element("E[1;L]", &r1), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_element("1/0*vac", &r1), Err(ParseError::Syntax { position: 2, .. })));
    assert!(matches!(parse_element("vac vac", &r1), Err(ParseError::Syntax { .. })));
    assert!(matches!(parse_element("", &r1), Err(ParseError::Syntax { position: 0, .. })));
}
