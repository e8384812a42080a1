mod common;

use compalg::poincare::{
    clifford_gamma_poincare, gaussian_binomial, grassmann_poincare, hirsch, oriented_grassmann_poincare,
    product_form, wn_poincare, ProductSpace, UniPoly, WeylDegrees, WeylType,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn deg(t: WeylType) -> WeylDegrees {
    WeylDegrees::single(t)
}

/// `Π_{i ∈ range}(1 + t^{2i})` multiplied out term by term.
fn product_oracle(range: std::ops::RangeInclusive<usize>) -> UniPoly {
    let mut coeffs = vec![BigInt::from(1)];
    for i in range {
        let mut next = coeffs.clone();
        next.resize(coeffs.len() + 2 * i, BigInt::from(0));
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 2 * i] += c;
        }
        coeffs = next;
    }
    UniPoly::new(coeffs)
}

fn assert_poincare_shape(p: &UniPoly) {
    assert!(p.has_nonnegative_coeffs(), "{p}");
    assert_eq!(p.coeff(0), BigInt::from(1), "{p}");
}

#[test]
fn hirsch_matches_product_forms() {
    for n in 2..=8 {
        let h = hirsch(&deg(WeylType::BC(n)), &deg(WeylType::U1SU(n))).unwrap();
        assert_eq!(h, product_form(ProductSpace::Y(n)).unwrap(), "Y({n})");
        assert_eq!(h, product_oracle(2..=n));
        assert_poincare_shape(&h);
    }
    for n in 3..=8 {
        let h = hirsch(&deg(WeylType::D(n)), &deg(WeylType::U1SU(n))).unwrap();
        assert_eq!(h, product_form(ProductSpace::Z(n)).unwrap(), "Z({n})");
        assert_eq!(h, product_oracle(2..=n - 1));
        assert_poincare_shape(&h);
    }
}

#[test]
fn hirsch_rejects_rank_mismatch() {
    assert!(hirsch(&deg(WeylType::BC(3)), &deg(WeylType::U1SU(2))).is_err());
    assert!("BC:2*A:1".parse::<WeylDegrees>().is_ok());
    assert!("Q:2".parse::<WeylDegrees>().is_err());
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn gaussian_is_palindromic_with_binomial_value((n, k, step) in (0usize..=12).prop_flat_map(|n| (Just(n), 0..=n, 1usize..=2))) {
        let g = gaussian_binomial(n, k, step).unwrap();
        prop_assert!(g.is_palindromic());
        prop_assert_eq!(g.eval(1), binomial(n, k));
        assert_poincare_shape(&g);
    }

    #[test]
    fn grassmann_symmetry((p, q) in (1usize..=7, 1usize..=7)) {
        let a = grassmann_poincare(p, q).unwrap();
        prop_assert_eq!(a.clone(), grassmann_poincare(q, p).unwrap());
        prop_assert_eq!(a.eval(1), binomial(p + q, p));
    }

    #[test]
    fn division_inverts_multiplication((a, b) in (proptest::collection::vec(-5i64..=5, 0..6), proptest::collection::vec(-5i64..=5, 1..4))) {
        let (a, b) = (UniPoly::from_i64(&a), UniPoly::from_i64(&b));
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
    }
}

#[test]
fn clifford_and_oriented_values() {
    let expect = UniPoly::one_plus(1).mul(&UniPoly::one_plus(2));
    assert_eq!(clifford_gamma_poincare(3, 2, 1).unwrap(), expect);
    assert_eq!(oriented_grassmann_poincare(1, 1).unwrap(), UniPoly::one_plus(2));
    for m in 1..=5 {
        for k in 1..=m {
            let p = oriented_grassmann_poincare(m, k).unwrap();
            assert_poincare_shape(&p);
            for j in 0..=m {
                if let Ok(p) = clifford_gamma_poincare(m, j, m - j) {
                    assert_poincare_shape(&p);
                }
            }
        }
    }
}

#[test]
fn wn_is_a_squared_gaussian() {
    for n in 1..=8 {
        let p = wn_poincare(n).unwrap();
        assert_eq!(p, gaussian_binomial(n, n / 2, 2).unwrap());
        assert_eq!(p.eval(1), binomial(n, n / 2));
    }
}

#[test]
fn rendering() {
    let p = UniPoly::from_terms(&[(0, 1), (4, 1), (6, 1), (10, 1)]);
    assert_eq!(p.to_text(), "1 + t^4 + t^6 + t^10");
    assert_eq!(p.to_latex(), "1 + t^{4} + t^{6} + t^{10}");
    assert_eq!(UniPoly::from_json(&p.to_json()).unwrap(), p);
}
