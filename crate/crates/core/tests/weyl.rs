mod common;

use compalg::budget::Budget;
use compalg::weylinv::{
    act, ktheory_rank, reynolds, weyl_index, KPair, LaurentPoly, SignedPermGroup,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn groups() -> Vec<SignedPermGroup> {
    vec![
        SignedPermGroup::Sym(3),
        SignedPermGroup::Hyperoctahedral(3),
        SignedPermGroup::EvenSigned(3),
        SignedPermGroup::Signs(3),
        SignedPermGroup::Trivial(3),
        SignedPermGroup::Product(vec![SignedPermGroup::Sym(1), SignedPermGroup::Hyperoctahedral(2)]),
    ]
}

fn laurent(n: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-2i64..=2, n), -3i64..=3), 0..4).prop_map(move |ts| {
        ts.into_iter().fold(LaurentPoly::zero(n), |acc, (e, c)| {
            acc.try_add(&LaurentPoly::monomial(n, e, BigRational::from_integer(c.into()))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(common::config(150))]

    #[test]
    fn reynolds_is_invariant_and_idempotent((g, f) in (proptest::sample::select(groups()), laurent(3))) {
        let r = reynolds(&g, &f, Budget::default()).unwrap();
        for s in g.generators() {
            prop_assert_eq!(act(&s, &r).unwrap(), r.clone());
        }
        prop_assert!(g.is_invariant(&r).unwrap());
        prop_assert_eq!(reynolds(&g, &r, Budget::default()).unwrap(), r);
    }

    #[test]
    fn action_preserves_products((g, f, h, pick) in (proptest::sample::select(groups()), laurent(3), laurent(3), any::<prop::sample::Index>())) {
        let els = g.elements(Budget::default()).unwrap();
        let s = pick.get(&els);
        let lhs = act(s, &f.try_mul(&h).unwrap()).unwrap();
        let rhs = act(s, &f).unwrap().try_mul(&act(s, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_display_round_trip(f in laurent(3)) {
        prop_assert_eq!(LaurentPoly::parse(&f.to_string(), Some(3)).unwrap(), f);
    }
}

#[test]
fn element_counts_match_orders() {
    for g in groups() {
        let els = g.elements(Budget::default()).unwrap();
        assert_eq!(BigInt::from(els.len()), g.order(), "{g}");
        assert!(els.iter().all(|s| g.contains(s)));
    }
}

#[test]
fn indices_against_factorials() {
    for n in 1..=6 {
        let quat = weyl_index(&SignedPermGroup::Sym(2 * n), &SignedPermGroup::Sym(n)).unwrap();
        assert_eq!(quat, factorial(2 * n) / factorial(n));
        let split = SignedPermGroup::Product(vec![SignedPermGroup::Sym(n), SignedPermGroup::Sym(n)]);
        let s = weyl_index(&SignedPermGroup::Sym(2 * n), &split).unwrap();
        assert_eq!(s, factorial(2 * n) / (factorial(n) * factorial(n)));
        assert_eq!(ktheory_rank(KPair::Quaternionic(n)).unwrap(), quat);
        assert_eq!(ktheory_rank(KPair::Split(n)).unwrap(), s);
    }
    assert_eq!(ktheory_rank(KPair::OneDimSplit).unwrap(), BigInt::from(2));
    assert_eq!(ktheory_rank(KPair::Quaternionic(1)).unwrap(), BigInt::from(2));
    assert!(ktheory_rank(KPair::Split(0)).is_err());
}

#[test]
fn budget_guards_large_groups() {
    let g = SignedPermGroup::Hyperoctahedral(12);
    assert!(g.elements(Budget::new(1)).is_err());
}

#[test]
fn group_strings() {
    let g: SignedPermGroup = "A:1*BC:2".parse().unwrap();
    assert_eq!(g, SignedPermGroup::Product(vec![SignedPermGroup::Sym(1), SignedPermGroup::Hyperoctahedral(2)]));
    assert!("E:8".parse::<SignedPermGroup>().is_err());
}
