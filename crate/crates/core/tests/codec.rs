mod common;

use std::sync::Arc;

use compalg::clifford::{CliffordSignature, Multivector};
use compalg::codec::*;
use compalg::exactfields::{FieldSpec, QuadExt};
use compalg::fixtures::{self, Fixture};
use compalg::matalg::FieldMatrix;
use compalg::weylinv::{LaurentPoly, SignedPermGroup};
use compalg::zmod::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::{json, Value};

fn reparse(v: &Value) -> Value {
    serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
}

fn field_specs() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Base(common::q()),
        FieldSpec::Base(common::fp(7)),
        FieldSpec::Quad(QuadExt::new(common::q().from_i64(-1)).unwrap()),
        FieldSpec::Quad(QuadExt::new(common::fp(5).from_i64(2)).unwrap()),
    ]
}

fn spec_scalar(spec: FieldSpec) -> BoxedStrategy<compalg::exactfields::Scalar> {
    match spec {
        FieldSpec::Base(b) => common::elem(b).prop_map(compalg::exactfields::Scalar::Base).boxed(),
        FieldSpec::Quad(ext) => common::scalar(ext),
    }
}

fn field_matrix() -> BoxedStrategy<FieldMatrix> {
    (prop::sample::select(field_specs()), 1usize..=3, 1usize..=3)
        .prop_flat_map(|(spec, m, n)| {
            prop::collection::vec(spec_scalar(spec.clone()), m * n)
                .prop_map(move |es| FieldMatrix::new(spec.clone(), m, n, es).unwrap())
        })
        .boxed()
}

fn laurent() -> BoxedStrategy<LaurentPoly> {
    (1usize..=3)
        .prop_flat_map(|n| {
            prop::collection::vec((prop::collection::vec(-3i64..=3, n), -5i64..=5, 1i64..=3), 0..5).prop_map(
                move |terms| {
                    terms.into_iter().fold(LaurentPoly::zero(n), |acc, (e, c, d)| {
                        let m = LaurentPoly::monomial(n, e, BigRational::new(c.into(), d.into()));
                        acc.try_add(&m).unwrap()
                    })
                },
            )
        })
        .boxed()
}

fn multivector() -> BoxedStrategy<Multivector> {
    (0usize..=3, 0usize..=2)
        .prop_filter("nonempty signature", |(p, q)| p + q > 0)
        .prop_flat_map(|(p, q)| {
            let s = CliffordSignature::new(p, q).unwrap();
            prop::collection::vec((-4i64..=4, 1i64..=3), s.dim()).prop_map(move |cs| {
                let cs = cs.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect();
                Multivector::from_coeffs(s, cs).unwrap()
            })
        })
        .boxed()
}

proptest! {
    #![proptest_config(common::config(300))]

    #[test]
    fn rationals_round_trip(n in -1000i64..=1000, d in 1i64..=50) {
        let r = BigRational::new(n.into(), d.into());
        prop_assert_eq!(rational_from_json(&reparse(&rational_to_json(&r))).unwrap(), r.clone());
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn quaternions_round_trip(z in common::algebra_strategy().prop_flat_map(common::quaternion)) {
        let v = reparse(&quaternion_to_json(&z));
        let back = quaternion_from_json(&v).unwrap();
        prop_assert_eq!(back.coeffs(), z.coeffs());
        let a = reparse(&algebra_to_json(z.algebra()));
        prop_assert_eq!(algebra_to_json(&algebra_from_json(&a).unwrap()), a);
    }

    #[test]
    fn comp_matrices_round_trip(
        z in (common::algebra_strategy(), 1usize..=3, 1usize..=3)
            .prop_flat_map(|(a, m, n)| common::matrix(a, m, n))
    ) {
        let v = reparse(&comp_matrix_to_json(&z));
        let back = comp_matrix_from_json(&v).unwrap();
        prop_assert_eq!(comp_matrix_to_json(&back), v);
        prop_assert_eq!((back.rows(), back.cols()), (z.rows(), z.cols()));
    }

    #[test]
    fn field_matrices_round_trip(m in field_matrix()) {
        let v = reparse(&field_matrix_to_json(&m));
        prop_assert_eq!(field_matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn int_matrices_round_trip(rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(-10_000i64..=10_000, 16)) {
        let entries = seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
        let m = IntMatrix::new(rows, cols, entries).unwrap();
        let v = reparse(&int_matrix_to_json(&m));
        prop_assert_eq!(int_matrix_from_json(&v, None).unwrap(), m);
    }

    #[test]
    fn laurent_round_trip(f in laurent()) {
        let v = reparse(&laurent_to_json(&f));
        prop_assert_eq!(laurent_from_json(&v).unwrap(), f);
    }

    #[test]
    fn multivectors_round_trip(x in multivector()) {
        let v = reparse(&signed_multivector_to_json(&x));
        prop_assert_eq!(signed_multivector_from_json(&v).unwrap(), x.clone());
        let bare = reparse(&multivector_to_json(&x));
        prop_assert_eq!(multivector_from_json(x.signature(), &bare).unwrap(), x);
    }
}

#[test]
fn big_integers_survive_as_strings() {
    let big = BigInt::from(10).pow(30);
    let m = IntMatrix::new(1, 1, vec![big.clone()]).unwrap();
    let v = reparse(&int_matrix_to_json(&m));
    assert_eq!(int_matrix_from_json(&v, None).unwrap().get(0, 0), &big);
}

#[test]
fn groups_round_trip() {
    let groups = [
        SignedPermGroup::Sym(3),
        SignedPermGroup::Hyperoctahedral(2),
        SignedPermGroup::EvenSigned(4),
        SignedPermGroup::Trivial(1),
        SignedPermGroup::Signs(2),
        SignedPermGroup::Product(vec![SignedPermGroup::Sym(2), SignedPermGroup::Hyperoctahedral(1)]),
    ];
    for g in groups {
        let v = reparse(&group_to_json(&g));
        assert_eq!(group_from_json(&v).unwrap(), g);
    }
}

#[test]
fn fields_parse() {
    assert_eq!(field_to_json(parse_field("Fp:11").unwrap()), json!("Fp:11"));
    assert!(parse_field("Fp:12").is_err());
    assert!(parse_field("R").is_err());
    for spec in field_specs() {
        let v = reparse(&spec_to_json(&spec));
        assert_eq!(spec_to_json(&spec_from_json(&v).unwrap()), v);
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let hamilton = json!({"field": "Q", "a": -1, "b": -1});
    let cases = [
        json!({"algebra": hamilton, "m": 2, "n": 1, "entries": [[[1, 0, 0, 0]]]}),
        json!({"algebra": hamilton, "m": 1, "n": 1, "entries": [[[1, 0, 0]]]}),
        json!({"algebra": hamilton, "m": 1, "n": 1, "blocks": [[1, 0], [0, 1]]}),
        json!({"algebra": {"field": "Q", "a": 0, "b": -1}, "m": 1, "n": 1, "entries": [[[1, 0, 0, 0]]]}),
        json!({"m": 1, "n": 1}),
    ];
    for v in cases {
        assert!(comp_matrix_from_json(&v).is_err(), "{v}");
    }
    assert!(elem_from_json(common::fp(5), &json!("1/5")).is_err());
    assert!(rational_from_json(&json!("1/0")).is_err());
    assert!(int_matrix_from_json(&json!([[1, 2], [3]]), None).is_err());
}

#[test]
fn fp_inputs_reduce() {
    let f = common::fp(5);
    assert_eq!(elem_from_json(f, &json!(7)).unwrap(), f.from_i64(2));
    assert_eq!(elem_from_json(f, &json!("1/2")).unwrap(), f.from_i64(3));
    assert_eq!(elem_from_json(f, &json!(-1)).unwrap(), f.from_i64(4));
}

#[test]
fn corpus_fixtures_parse() {
    let all = fixtures::corpus_fixtures();
    assert_eq!(all.len(), fixtures::names().count());
    for name in fixtures::names() {
        let raw: Value = serde_json::from_str(fixtures::raw(name).unwrap()).unwrap();
        assert_eq!(raw["version"], json!(fixtures::FIXTURE_VERSION));
        match fixtures::parse_fixture(fixtures::raw(name).unwrap()).unwrap() {
            Fixture::Rank(r) => {
                let back = reparse(&comp_matrix_to_json(&r.matrix));
                assert_eq!(comp_matrix_to_json(&comp_matrix_from_json(&back).unwrap()), back);
            }
            Fixture::Clifford(c) => assert_eq!(classification_to_json(&c.expected)["base"], raw["expected"]["base"]),
        }
    }
}

#[test]
fn errors_have_kind_and_message() {
    let v = error_to_json("input", "bad");
    assert_eq!(v, json!({"error": {"kind": "input", "message": "bad"}}));
}

#[test]
fn scalar_specs_share_extension() {
    let ext = QuadExt::new(common::q().from_i64(3)).unwrap();
    let spec = FieldSpec::Quad(Arc::clone(&ext));
    let s = compalg::exactfields::Scalar::quad(&ext, common::q().from_i64(1), common::q().from_i64(-2));
    let v = reparse(&scalar_to_json(&s));
    assert_eq!(scalar_from_json(&spec, &v).unwrap(), s);
}
