#![allow(dead_code)]

use std::sync::Arc;

use compalg::exactfields::{BaseField, Elem, QuadExt, Scalar};
use compalg::matalg::CompMatrix;
use compalg::quatalg::{QuatAlgebra, Quaternion};
use proptest::prelude::*;

/// Property config without regression files.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn q() -> BaseField {
    BaseField::Rationals
}

pub fn fp(p: u64) -> BaseField {
    BaseField::prime(p).unwrap()
}

/// Small element of `field`: a ratio `n/d` over ℚ, a residue otherwise.
pub fn elem(field: BaseField) -> BoxedStrategy<Elem> {
    match field {
        BaseField::Rationals => (-9i64..=9, 1i64..=4)
            .prop_map(|(n, d)| BaseField::Rationals.from_ratio(n, d))
            .boxed(),
        BaseField::Prime(p) => (0..p as i64).prop_map(move |v| fp(p).from_i64(v)).boxed(),
    }
}

pub fn scalar(ext: Arc<QuadExt>) -> BoxedStrategy<Scalar> {
    let base = ext.base();
    (elem(base), elem(base))
        .prop_map(move |(x, y)| Scalar::quad(&ext, x, y))
        .boxed()
}

pub fn quaternion(alg: Arc<QuatAlgebra>) -> BoxedStrategy<Quaternion> {
    let base = alg.base();
    [elem(base), elem(base), elem(base), elem(base)]
        .prop_map(move |c| alg.element(c).unwrap())
        .boxed()
}

pub fn matrix(alg: Arc<QuatAlgebra>, rows: usize, cols: usize) -> BoxedStrategy<CompMatrix> {
    proptest::collection::vec(quaternion(alg.clone()), rows * cols)
        .prop_map(move |es| CompMatrix::new(alg.clone(), rows, cols, es).unwrap())
        .boxed()
}

pub fn algebra(field: BaseField, a: i64, b: i64) -> Arc<QuatAlgebra> {
    QuatAlgebra::new(field.from_i64(a), field.from_i64(b)).unwrap()
}

/// Algebras exercised by the property suites, split and nonsplit.
pub fn algebras() -> Vec<Arc<QuatAlgebra>> {
    vec![
        QuatAlgebra::hamilton(),
        algebra(q(), 2, 5),
        algebra(q(), 1, -1),
        algebra(fp(3), 1, -1),
        algebra(fp(7), -1, -3),
        QuatAlgebra::mat2(q()),
        QuatAlgebra::mat2(fp(5)),
    ]
}

pub fn algebra_strategy() -> BoxedStrategy<Arc<QuatAlgebra>> {
    proptest::sample::select(algebras()).boxed()
}

/// Elementwise `4`-coefficient product by the multiplication table of `(a,b)`,
/// written out independently of the library.
pub fn hamilton_style_mul(a: &Elem, b: &Elem, x: &[Elem; 4], y: &[Elem; 4]) -> [Elem; 4] {
    let m = |u: &Elem, v: &Elem| u.try_mul(v).unwrap();
    let ab = m(a, b);
    let [x0, x1, x2, x3] = x;
    let [y0, y1, y2, y3] = y;
    let sum = |ts: Vec<Elem>| ts.into_iter().reduce(|s, t| s.try_add(&t).unwrap()).unwrap();
    let neg = |e: Elem| -e;
    [
        sum(vec![m(x0, y0), m(a, &m(x1, y1)), m(b, &m(x2, y2)), neg(m(&ab, &m(x3, y3)))]),
        sum(vec![m(x0, y1), m(x1, y0), neg(m(b, &m(x2, y3))), m(b, &m(x3, y2))]),
        sum(vec![m(x0, y2), m(x2, y0), m(a, &m(x1, y3)), neg(m(a, &m(x3, y1)))]),
        sum(vec![m(x0, y3), m(x3, y0), m(x1, y2), neg(m(x2, y1))]),
    ]
}
