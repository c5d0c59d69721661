use latvoa::azalg::*;
use latvoa::q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let u = random_ap_element(&mut rng, 4);
        let v = random_ap_element(&mut rng, 4);
        let w = random_ap_element(&mut rng, 4);
        let l = u.mul(&v).unwrap().mul(&w).unwrap();
        let r = u.mul(&v.mul(&w).unwrap()).unwrap();
        assert_eq!(l, r, "({u})({v})({w})");
    }
}

#[test]
fn associativity_on_generator_triples() {
    let one = NormalForm::one(Tag::AP);
    let words: Vec<NormalForm> = std::iter::once(one)
        .chain(AP_GENS.iter().map(|g| NormalForm::gen(Tag::AP, *g)))
        .collect();
    for a in &words {
        for b in &words {
            for c in &words {
                let l = a.mul(b).unwrap().mul(c).unwrap();
                let r = a.mul(&b.mul(c).unwrap()).unwrap();
                assert_eq!(l, r, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn j_is_a_square_zero_ideal() {
    let js: Vec<NormalForm> = j_basis().iter().map(|w| NormalForm::word(Tag::AP, w)).collect();
    for a in &js {
        for b in &js {
            assert!(a.mul(b).unwrap().is_zero());
        }
        for g in AP_GENS {
            let g = NormalForm::gen(Tag::AP, g);
            assert!(ap_decompose(&g.mul(a).unwrap()).0.is_zero());
            assert!(ap_decompose(&a.mul(&g).unwrap()).0.is_zero());
        }
    }
}

#[test]
fn derived_relations() {
    use Gen::*;
    let ap = |ws: &[(i64, &[Gen])]| {
        NormalForm::from_words(Tag::AP, &ws.iter().map(|(c, w)| (q(*c), w.to_vec())).collect::<Vec<_>>())
    };
    assert!(ap(&[(1, &[Xab, X, X]), (1, &[Xab, X])]).is_zero());
    assert!(ap(&[(1, &[Xab, Y, Y]), (1, &[Xab, Y])]).is_zero());
    assert!(ap(&[(1, &[Xb, X, X]), (-1, &[Xb, X])]).is_zero());
    // x_b (x+y)^2 + x_b (x+y)
    assert!(ap(&[(1, &[Xb, X, X]), (1, &[Xb, X, Y]), (1, &[Xb, Y, X]), (1, &[Xb, Y, Y]), (1, &[Xb, X]), (1, &[Xb, Y])]).is_zero());
    // the literal form x_ab y^2 + x_ab is not a consequence
    assert!(!ap(&[(1, &[Xab, Y, Y]), (1, &[Xab])]).is_zero());
}
