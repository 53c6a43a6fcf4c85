//! Engine output against the reference implementations in `common`.

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlab::example26::{Example26, A_POLYS, B_POLYS};
use wlab::groebner::IdealGB;
use wlab::poly::MonOrder;

fn ord2(o: MonOrder) -> Ord2 {
    match o {
        MonOrder::Lex => Ord2::Lex,
        MonOrder::Grevlex => Ord2::Grevlex,
        other => panic!("no oracle for {other:?}"),
    }
}

fn engine_basis(ideal: &IdealGB) -> Vec<P> {
    sorted(ideal.basis().iter().map(from_poly).collect())
}

#[test]
fn naive_buchberger_agrees_on_example_ideals() {
    for order in [MonOrder::Grevlex, MonOrder::Lex] {
        let ex = Example26::build(order, None);
        for (name, ideal) in [
            ("I", &ex.i),
            ("J", &ex.j),
            ("K", &ex.k),
            ("L", &ex.l),
            ("T", &ex.t),
        ] {
            let gens: Vec<P> = ideal.generators().iter().map(from_poly).collect();
            let naive = naive_buchberger(&gens, ord2(order));
            assert_eq!(engine_basis(ideal), naive, "{name} under {}", order.name());
        }
    }
}

#[test]
fn naive_buchberger_agrees_on_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ring = wlab::poly::RingSpec::new(&["x", "y", "z"], MonOrder::Grevlex).unwrap();
    for _ in 0..40 {
        let n = 1 + (rand::Rng::gen_range(&mut rng, 0..3));
        let gens: Vec<P> = (0..n).map(|_| random_poly(&mut rng, 3, 2, 3)).collect();
        for order in [MonOrder::Grevlex, MonOrder::Lex] {
            let r = ring.with_order(order);
            let ideal = IdealGB::new(&r, gens.iter().map(|g| to_poly(g, &r)).collect());
            assert_eq!(
                engine_basis(&ideal),
                naive_buchberger(&gens, ord2(order)),
                "{gens:?}"
            );
        }
    }
}

#[test]
fn substitution_is_sound() {
    // d - (x2*c - x1*b) is, up to sign, a generator of I
    let ex = Example26::build(MonOrder::Grevlex, None);
    assert!(ex.i.contains(&ex.poly("d - x2*c + x1*b")));
    let mut oracle = MembershipOracle::new(&ex);
    assert!(oracle.in_i(&parse("d - x2*c + x1*b", &ex.ring)));
}

#[test]
fn membership_matches_macaulay_oracle() {
    let ex = Example26::build(MonOrder::Grevlex, None);
    let mut oracle = MembershipOracle::new(&ex);
    let mut cases = membership_cases(&ex, 2024, 150);
    cases.extend(A_POLYS.iter().chain(&B_POLYS).map(|(_, s)| parse(s, &ex.ring)));

    let (mut members_i, mut members_k) = (0, 0);
    for f in &cases {
        assert!(total_degree(f) <= 4);
        let poly = to_poly(f, &ex.ring);
        let (in_i, in_k) = (oracle.in_i(f), oracle.in_k(f));
        assert_eq!(ex.i.contains(&poly), in_i, "membership of {poly} in I");
        assert_eq!(ex.k.contains(&poly), in_k, "membership of {poly} in K");
        members_i += in_i as usize;
        members_k += in_k as usize;
    }
    assert!(cases.len() >= 100);
    // both answers must actually occur
    assert!(
        members_i >= 30 && cases.len() - members_i >= 30,
        "{members_i} of {}",
        cases.len()
    );
    assert!(members_k > members_i);
}
