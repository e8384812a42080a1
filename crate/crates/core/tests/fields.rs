mod common;

use std::sync::Arc;

use common::{elem, fp, q, scalar};
use compalg::exactfields::{invert_scalar, tau, BaseField, Elem, FieldSpec, QuadExt, Scalar};
use proptest::prelude::*;

fn ext(base: BaseField, a: i64) -> Arc<QuadExt> {
    QuadExt::new(base.from_i64(a)).unwrap()
}

fn base_axioms(x: &Elem, y: &Elem, z: &Elem) {
    let add = |a: &Elem, b: &Elem| a.try_add(b).unwrap();
    let mul = |a: &Elem, b: &Elem| a.try_mul(b).unwrap();
    assert_eq!(add(&add(x, y), z), add(x, &add(y, z)));
    assert_eq!(mul(&mul(x, y), z), mul(x, &mul(y, z)));
    assert_eq!(add(x, y), add(y, x));
    assert_eq!(mul(x, y), mul(y, x));
    assert_eq!(mul(x, &add(y, z)), add(&mul(x, y), &mul(x, z)));
    assert_eq!(add(x, &x.zero_like()), *x);
    assert_eq!(mul(x, &x.one_like()), *x);
    assert!(add(x, &-x).is_zero());
    match x.inverse() {
        Some(i) => assert!(mul(x, &i).is_one()),
        None => assert!(x.is_zero()),
    }
}

fn quad_axioms(x: &Scalar, y: &Scalar, z: &Scalar) {
    let add = |a: &Scalar, b: &Scalar| a.try_add(b).unwrap();
    let mul = |a: &Scalar, b: &Scalar| a.try_mul(b).unwrap();
    assert_eq!(add(&add(x, y), z), add(x, &add(y, z)));
    assert_eq!(mul(&mul(x, y), z), mul(x, &mul(y, z)));
    assert_eq!(mul(x, y), mul(y, x));
    assert_eq!(mul(x, &add(y, z)), add(&mul(x, y), &mul(x, z)));
    assert_eq!(mul(x, &x.one_like()), *x);
    assert!(add(x, &-x).is_zero());
    assert_eq!(tau(&mul(x, y)).unwrap(), mul(&tau(x).unwrap(), &tau(y).unwrap()));
    let n = mul(x, &tau(x).unwrap());
    assert!(n.parts().1.is_zero());
    match invert_scalar(x) {
        Ok(i) => assert!(mul(x, &i).try_sub(&x.one_like()).unwrap().is_zero()),
        Err(_) => assert!(n.is_zero()),
    }
}

proptest! {
    #![proptest_config(common::config(1000))]

    #[test]
    fn rationals((x, y, z) in (elem(q()), elem(q()), elem(q()))) {
        base_axioms(&x, &y, &z);
    }

    #[test]
    fn prime_fields(p in proptest::sample::select(vec![2u64, 3, 5, 7, 101]), seed in any::<[i64; 3]>()) {
        let f = fp(p);
        let [x, y, z] = seed.map(|s| f.from_i64(s));
        base_axioms(&x, &y, &z);
    }

    #[test]
    fn gaussian_rationals((x, y, z) in (scalar(ext(q(), -1)), scalar(ext(q(), -1)), scalar(ext(q(), -1)))) {
        quad_axioms(&x, &y, &z);
    }

    #[test]
    fn rational_split_algebra((x, y, z) in (scalar(ext(q(), 4)), scalar(ext(q(), 4)), scalar(ext(q(), 4)))) {
        quad_axioms(&x, &y, &z);
    }

    #[test]
    fn finite_quadratic((x, y, z) in (scalar(ext(fp(5), 2)), scalar(ext(fp(5), 2)), scalar(ext(fp(5), 2)))) {
        quad_axioms(&x, &y, &z);
    }

    #[test]
    fn finite_split((x, y, z) in (scalar(ext(fp(7), 2)), scalar(ext(fp(7), 2)), scalar(ext(fp(7), 2)))) {
        quad_axioms(&x, &y, &z);
    }
}

#[test]
fn unit_enumeration_matches_norm_criterion() {
    assert!(QuadExt::new(fp(2).one()).is_err());
    for p in [3u64, 5, 7] {
        let f = fp(p);
        let els = f.elements().unwrap();
        for a in &els {
            let Ok(e) = QuadExt::new(a.clone()) else {
                assert!(a.is_zero());
                continue;
            };
            let all: Vec<Scalar> = els
                .iter()
                .flat_map(|x| els.iter().map(move |y| (x.clone(), y.clone())))
                .map(|(x, y)| Scalar::quad(&e, x, y))
                .collect();
            let one = FieldSpec::Quad(e.clone()).one();
            for x in &all {
                let brute = all.iter().any(|y| x.try_mul(y).unwrap() == one);
                let n = x.try_mul(&tau(x).unwrap()).unwrap();
                assert_eq!(brute, !n.is_zero(), "p={p} a={a} x={x}");
                assert_eq!(invert_scalar(x).is_ok(), brute);
            }
        }
    }
}

#[test]
fn split_flags() {
    assert!(ext(q(), 9).is_split());
    assert!(!ext(q(), 2).is_split());
    assert!(ext(fp(7), 2).is_split());
    assert!(!ext(fp(7), 3).is_split());
}
