//! Clifford algebras `Cl(p,q)` over ℚ.
//!
//! Generators satisfy `eᵢ² = +1` for `i ≤ p`, `eᵢ² = −1` for `i > p`, and
//! anticommute. Basis blades are stored by bitmask: bit `i−1` set means `eᵢ`
//! is a factor, in increasing index order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactfields::{BaseField, Elem, FieldSpec, QuadExt, Scalar};
use crate::linalg;
use crate::matalg::{det_field, FieldMatrix};
use crate::quatalg::{QuatAlgebra, Quaternion};
use crate::rng::{self, Rng};

/// Largest supported `p + q` by default.
pub const DEFAULT_MAX_N: usize = 6;

/// Largest `p + q` that `classify` accepts; it only does arithmetic on `n`.
pub const CLASSIFY_MAX_N: usize = 60;

/// Largest `p + q` for `verify_classification`.
pub const VERIFY_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("signature ({p},{q}) exceeds the size limit n ≤ {max}")]
    OutOfBudget { p: usize, q: usize, max: usize },
    #[error("multivectors belong to different signatures")]
    SignatureMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element is not a vector (grade one)")]
    NotGradeOne,
    #[error("cannot parse multivector: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordSignature {
    p: usize,
    q: usize,
}

impl CliffordSignature {
    pub fn new(p: usize, q: usize) -> Result<Self, CliffordError> {
        CliffordSignature::with_limit(p, q, DEFAULT_MAX_N)
    }

    pub fn with_limit(p: usize, q: usize, max: usize) -> Result<Self, CliffordError> {
        if p + q > max {
            return Err(CliffordError::OutOfBudget { p, q, max });
        }
        Ok(CliffordSignature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    /// `eᵢ²` for the 0-based generator index `i`.
    pub fn square(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    /// `blade(a)·blade(b) = sign · blade(a XOR b)`.
    pub fn blade_product(&self, a: usize, b: usize) -> (i64, usize) {
        let mut swaps = 0;
        let mut bb = b;
        while bb != 0 {
            let j = bb.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            bb &= bb - 1;
        }
        let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
        let mut common = a & b;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            sign *= self.square(i);
            common &= common - 1;
        }
        (sign, a ^ b)
    }

    /// Blade masks in graded-lexicographic order.
    pub fn blades_grlex(&self) -> Vec<usize> {
        let mut b: Vec<usize> = (0..self.dim()).collect();
        b.sort_by_key(|&m| (m.count_ones(), blade_indices(m)));
        b
    }

    /// The diagonal form `I_{p,q}`.
    pub fn metric(&self) -> FieldMatrix {
        let n = self.n();
        let mut m = FieldMatrix::zero(FieldSpec::Base(BaseField::Rationals), n, n);
        for i in 0..n {
            m.set(i, i, Scalar::Base(BaseField::Rationals.from_i64(self.square(i))));
        }
        m
    }
}

impl fmt::Display for CliffordSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// 1-based generator indices of a blade.
pub fn blade_indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Subset key: `"0"` for the scalar blade, otherwise the indices, e.g. `"12"`.
pub fn blade_key(mask: usize) -> String {
    if mask == 0 {
        "0".into()
    } else {
        blade_indices(mask).iter().map(ToString::to_string).collect()
    }
}

pub fn parse_blade_key(key: &str, n: usize) -> Option<usize> {
    if key == "0" {
        return Some(0);
    }
    let mut mask = 0;
    let mut last = 0;
    for ch in key.chars() {
        let i = ch.to_digit(10)? as usize;
        if i == 0 || i > n || i <= last {
            return None;
        }
        last = i;
        mask |= 1 << (i - 1);
    }
    Some(mask)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    sig: CliffordSignature,
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Multivector {
    pub fn zero(sig: CliffordSignature) -> Self {
        Multivector {
            sig,
            coeffs: vec![BigRational::zero(); sig.dim()],
        }
    }

    pub fn scalar(sig: CliffordSignature, c: BigRational) -> Self {
        let mut x = Multivector::zero(sig);
        x.coeffs[0] = c;
        x
    }

    pub fn one(sig: CliffordSignature) -> Self {
        Multivector::scalar(sig, BigRational::one())
    }

    pub fn blade(sig: CliffordSignature, mask: usize, c: BigRational) -> Self {
        let mut x = Multivector::zero(sig);
        x.coeffs[mask] = c;
        x
    }

    /// The generator `e_{i+1}`.
    pub fn generator(sig: CliffordSignature, i: usize) -> Self {
        Multivector::blade(sig, 1 << i, BigRational::one())
    }

    /// Vector `Σ vᵢ eᵢ`.
    pub fn vector(sig: CliffordSignature, v: &[BigRational]) -> Self {
        let mut x = Multivector::zero(sig);
        for (i, c) in v.iter().enumerate() {
            x.coeffs[1 << i] = c.clone();
        }
        x
    }

    pub fn from_coeffs(sig: CliffordSignature, coeffs: Vec<BigRational>) -> Result<Self, CliffordError> {
        if coeffs.len() != sig.dim() {
            return Err(CliffordError::Parse(format!("{} coefficients for dimension {}", coeffs.len(), sig.dim())));
        }
        Ok(Multivector { sig, coeffs })
    }

    pub fn signature(&self) -> CliffordSignature {
        self.sig
    }

    /// Coefficients indexed by blade mask.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &BigRational {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Multivector) -> Result<(), CliffordError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(CliffordError::SignatureMismatch)
        }
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        self.check(other)?;
        Ok(Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        self.check(other)?;
        Ok(Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Multivector {
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector, CliffordError> {
        self.check(other)?;
        let mut out = Multivector::zero(self.sig);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let (s, m) = self.sig.blade_product(a, b);
                let t = ca * cb;
                if s > 0 {
                    out.coeffs[m] += t;
                } else {
                    out.coeffs[m] -= t;
                }
            }
        }
        Ok(out)
    }

    fn map_grades(&self, sign: impl Fn(u32) -> bool) -> Multivector {
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if sign(m.count_ones()) { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Negates odd grades.
    pub fn grade_involution(&self) -> Multivector {
        self.map_grades(|k| k % 2 == 1)
    }

    /// Reverses factor order: sign `(−1)^{k(k−1)/2}` on grade `k`.
    pub fn reversion(&self) -> Multivector {
        self.map_grades(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    pub fn clifford_conjugate(&self) -> Multivector {
        self.reversion().grade_involution()
    }

    pub fn grade_part(&self, k: u32) -> Multivector {
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if m.count_ones() == k { c.clone() } else { BigRational::zero() })
                .collect(),
        }
    }

    pub fn is_grade(&self, k: u32) -> bool {
        self.coeffs.iter().enumerate().all(|(m, c)| c.is_zero() || m.count_ones() == k)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(m, c)| c.is_zero() || m.count_ones() % 2 == 0)
    }

    pub fn as_scalar(&self) -> Option<BigRational> {
        self.is_grade(0).then(|| self.coeffs[0].clone())
    }

    /// Coefficients on `e₁, …, eₙ`.
    pub fn vector_part(&self) -> Vec<BigRational> {
        (0..self.sig.n()).map(|i| self.coeffs[1 << i].clone()).collect()
    }

    /// `Q(v) = Σ εᵢ vᵢ²` for a vector.
    pub fn quadratic_form(&self) -> Result<BigRational, CliffordError> {
        if !self.is_grade(1) {
            return Err(CliffordError::NotGradeOne);
        }
        Ok(self
            .vector_part()
            .iter()
            .enumerate()
            .map(|(i, v)| v * v * rat(self.sig.square(i)))
            .sum())
    }

    /// Left-multiplication matrix on the blade basis (mask order).
    fn left_regular(&self) -> Vec<Vec<Elem>> {
        let d = self.sig.dim();
        let mut rows = vec![vec![BaseField::Rationals.zero(); d]; d];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for b in 0..d {
                let (s, m) = self.sig.blade_product(a, b);
                let t = Elem::Rat(ca * rat(s));
                rows[m][b] = &rows[m][b] + &t;
            }
        }
        rows
    }

    /// Two-sided inverse, from the regular representation.
    pub fn inverse(&self) -> Result<Multivector, CliffordError> {
        let d = self.sig.dim();
        let mut rhs = vec![BaseField::Rationals.zero(); d];
        rhs[0] = BaseField::Rationals.one();
        let rows = self.left_regular();
        let x = linalg::solve(&rows, &rhs, &BaseField::Rationals.zero())
            .expect("rational elimination")
            .ok_or(CliffordError::NotInvertible)?;
        let inv = Multivector {
            sig: self.sig,
            coeffs: x.into_iter().map(|e| e.as_rational().expect("rational").clone()).collect(),
        };
        let check = inv.geometric_product(self)?;
        if check != Multivector::one(self.sig) {
            return Err(CliffordError::NotInvertible);
        }
        Ok(inv)
    }

    /// Parses sums of terms such as `"2 + e1*e2 - 3/4*e13"`; `e13` is `e₁e₃`.
    pub fn parse(sig: CliffordSignature, s: &str) -> Result<Multivector, CliffordError> {
        let err = |m: &str| CliffordError::Parse(format!("{m} in {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty input"));
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (k, ch) in cleaned.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if k > 0 {
                    chunks.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        let mut total = Multivector::zero(sig);
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(err("empty term"));
            }
            let mut term = Multivector::one(sig);
            for factor in chunk.split('*') {
                let f = if let Some(idx) = factor.strip_prefix('e') {
                    let mut x = Multivector::one(sig);
                    if idx.is_empty() {
                        return Err(err("missing generator index"));
                    }
                    for ch in idx.chars() {
                        let i = ch.to_digit(10).ok_or_else(|| err("bad generator index"))? as usize;
                        if i == 0 || i > sig.n() {
                            return Err(err("generator index out of range"));
                        }
                        x = x.geometric_product(&Multivector::generator(sig, i - 1))?;
                    }
                    x
                } else {
                    let v: BigRational = match factor.split_once('/') {
                        Some((a, b)) => {
                            let a: BigInt = a.parse().map_err(|_| err("bad number"))?;
                            let b: BigInt = b.parse().map_err(|_| err("bad number"))?;
                            if b.is_zero() {
                                return Err(err("zero denominator"));
                            }
                            BigRational::new(a, b)
                        }
                        None => BigRational::from_integer(factor.parse().map_err(|_| err("bad factor"))?),
                    };
                    Multivector::scalar(sig, v)
                };
                term = term.geometric_product(&f)?;
            }
            total = if neg { total.try_sub(&term)? } else { total.try_add(&term)? };
        }
        Ok(total)
    }

    /// Nonzero coefficients keyed by blade, in graded-lexicographic order.
    pub fn terms_grlex(&self) -> Vec<(usize, &BigRational)> {
        self.sig
            .blades_grlex()
            .into_iter()
            .map(|m| (m, &self.coeffs[m]))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn to_key_map(&self) -> BTreeMap<String, BigRational> {
        self.terms_grlex().into_iter().map(|(m, c)| (blade_key(m), c.clone())).collect()
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_grlex();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if m == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "e{}", blade_key(m))?;
            }
        }
        Ok(())
    }
}

pub fn geometric_product(x: &Multivector, y: &Multivector) -> Result<Multivector, CliffordError> {
    x.geometric_product(y)
}

/// The three involutions of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involutions {
    pub grade_involution: Multivector,
    pub reversion: Multivector,
    pub clifford_conjugate: Multivector,
}

pub fn involutions(x: &Multivector) -> Involutions {
    Involutions {
        grade_involution: x.grade_involution(),
        reversion: x.reversion(),
        clifford_conjugate: x.clifford_conjugate(),
    }
}

/// Division algebra over which `Cl(p,q)` is a matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseDivision {
    R,
    C,
    H,
}

impl BaseDivision {
    pub fn label(&self) -> &'static str {
        match self {
            BaseDivision::R => "R",
            BaseDivision::C => "C",
            BaseDivision::H => "H",
        }
    }

    pub fn real_dim(&self) -> u128 {
        match self {
            BaseDivision::R => 1,
            BaseDivision::C => 2,
            BaseDivision::H => 4,
        }
    }
}

/// `Mat(matrix_size, base)`, doubled when `direct_sum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub base: BaseDivision,
    pub matrix_size: u64,
    pub direct_sum: bool,
}

impl Classification {
    pub fn real_dim(&self) -> u128 {
        let s = self.matrix_size as u128;
        let one = s * s * self.base.real_dim();
        if self.direct_sum {
            2 * one
        } else {
            one
        }
    }

    /// Dimension of the center over ℝ.
    pub fn center_dim(&self) -> usize {
        if self.direct_sum || self.base == BaseDivision::C {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = format!("Mat({}, {})", self.matrix_size, self.base.label());
        if self.direct_sum {
            write!(f, "{one} + {one}")
        } else {
            f.write_str(&one)
        }
    }
}

/// Standard classification by `r = p − q mod 8`.
pub fn classify(p: usize, q: usize) -> Result<Classification, CliffordError> {
    let n = p + q;
    if n > CLASSIFY_MAX_N {
        return Err(CliffordError::OutOfBudget { p, q, max: CLASSIFY_MAX_N });
    }
    let r = (p as i64 - q as i64).rem_euclid(8);
    let pow = |e: usize| 1u64 << e;
    let (base, matrix_size, direct_sum) = match r {
        0 | 2 => (BaseDivision::R, pow(n / 2), false),
        1 => (BaseDivision::R, pow((n - 1) / 2), true),
        3 | 7 => (BaseDivision::C, pow((n - 1) / 2), false),
        4 | 6 => (BaseDivision::H, pow((n - 2) / 2), false),
        _ => (BaseDivision::H, pow((n - 3) / 2), true),
    };
    Ok(Classification {
        base,
        matrix_size,
        direct_sum,
    })
}

/// The eight-row table listing only real and quaternionic matrix algebras:
/// `Mat(2^⌊n/2⌋, ℝ)` for `r ∈ 0..=3`, `Mat(2^{⌊n/2⌋−1}, ℍ)` for `r ∈ 4..=7`.
pub fn printed_table_entry(p: usize, q: usize) -> Option<Classification> {
    let n = p + q;
    let r = (p as i64 - q as i64).rem_euclid(8);
    if r < 4 {
        Some(Classification {
            base: BaseDivision::R,
            matrix_size: 1 << (n / 2),
            direct_sum: false,
        })
    } else {
        (n / 2).checked_sub(1).map(|e| Classification {
            base: BaseDivision::H,
            matrix_size: 1 << e,
            direct_sum: false,
        })
    }
}

/// Dimension of the center, from the commutant of the generators.
pub fn center_dimension(sig: CliffordSignature) -> usize {
    let d = sig.dim();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for i in 0..sig.n() {
        let g = 1usize << i;
        // (eᵢx − xeᵢ) coefficient on each output blade, as a function of x.
        let mut block = vec![vec![BaseField::Rationals.zero(); d]; d];
        for b in 0..d {
            let (s1, m1) = sig.blade_product(g, b);
            let (s2, m2) = sig.blade_product(b, g);
            debug_assert_eq!(m1, m2);
            block[m1][b] = BaseField::Rationals.from_i64(s1 - s2);
        }
        rows.extend(block);
    }
    let rank = linalg::rank(&rows).expect("rational elimination");
    d - rank
}

/// `e₁e₂⋯eₙ`.
pub fn pseudoscalar(sig: CliffordSignature) -> Multivector {
    Multivector::blade(sig, sig.dim() - 1, BigRational::one())
}

/// Which explicit isomorphism was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport {
    pub target: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub p: usize,
    pub q: usize,
    pub classification: Classification,
    pub dimension: usize,
    pub dimension_agrees: bool,
    pub center_dim: usize,
    pub predicted_center_dim: usize,
    /// Square of the central pseudoscalar for odd `n`.
    pub center_square: Option<BigRational>,
    pub transport: Option<Transport>,
    /// Whether the eight-row real/quaternionic table gives the same answer.
    pub printed_table_agrees: bool,
    pub agrees: bool,
}

/// Checks that `φ` (given on generators) extends to an injective algebra map.
fn check_transport<T: Clone + PartialEq>(
    sig: CliffordSignature,
    gens: &[T],
    one: T,
    mul: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
    coords: impl Fn(&T) -> Vec<Elem>,
) -> bool {
    let d = sig.dim();
    let img: Vec<T> = (0..d)
        .map(|m| {
            (0..sig.n())
                .filter(|i| m >> i & 1 == 1)
                .fold(one.clone(), |acc, i| mul(&acc, &gens[i]))
        })
        .collect();
    for a in 0..d {
        for b in 0..d {
            let (s, m) = sig.blade_product(a, b);
            let expect = if s > 0 { img[m].clone() } else { neg(&img[m]) };
            if mul(&img[a], &img[b]) != expect {
                return false;
            }
        }
    }
    let rows: Vec<Vec<Elem>> = img.iter().map(&coords).collect();
    linalg::rank(&rows).expect("rational elimination") == d
}

fn transport_for(sig: CliffordSignature) -> Option<Transport> {
    let q = |v: i64| BaseField::Rationals.from_i64(v);
    match (sig.p, sig.q) {
        (0, 1) | (1, 0) => {
            let a = if sig.p == 1 { 1 } else { -1 };
            let ext = QuadExt::new(q(a)).expect("nonzero");
            let root = Scalar::quad(&ext, q(0), q(1));
            let ok = check_transport(
                sig,
                &[root],
                Scalar::quad(&ext, q(1), q(0)),
                |x, y| x * y,
                |x| -x,
                |x| {
                    let (r, i) = x.parts();
                    vec![r, i]
                },
            );
            Some(Transport {
                target: format!("Q[sqrt({a})]"),
                ok,
            })
        }
        (0, 2) => {
            let h = QuatAlgebra::new(q(-1), q(-1)).expect("valid");
            let gens = [h.basis_element(1), h.basis_element(2)];
            let ok = quat_transport(sig, &h, &gens);
            Some(Transport {
                target: "(-1,-1)_Q".into(),
                ok,
            })
        }
        (2, 0) | (1, 1) => {
            let m = QuatAlgebra::mat2(BaseField::Rationals);
            let block = |r: [[i64; 2]; 2]| {
                Quaternion::from_block(&m, &[[q(r[0][0]), q(r[0][1])], [q(r[1][0]), q(r[1][1])]]).expect("matrix form")
            };
            let second = if sig.p == 2 { [[0, 1], [1, 0]] } else { [[0, -1], [1, 0]] };
            let gens = [block([[1, 0], [0, -1]]), block(second)];
            let ok = quat_transport(sig, &m, &gens);
            Some(Transport {
                target: "Mat(2,Q)".into(),
                ok,
            })
        }
        _ => None,
    }
}

fn quat_transport(sig: CliffordSignature, alg: &Arc<QuatAlgebra>, gens: &[Quaternion]) -> bool {
    check_transport(
        sig,
        gens,
        alg.one(),
        |x, y| x.try_mul(y).expect("same algebra"),
        Quaternion::neg,
        |x| x.coeffs().to_vec(),
    )
}

/// Recomputes the invariants predicted by [`classify`] from the algebra itself.
pub fn verify_classification(p: usize, q: usize) -> Result<ClassificationReport, CliffordError> {
    let sig = CliffordSignature::with_limit(p, q, VERIFY_MAX_N)?;
    let classification = classify(p, q)?;
    let dimension = sig.dim();
    let dimension_agrees = classification.real_dim() == dimension as u128;
    let center_dim = center_dimension(sig);
    let predicted_center_dim = classification.center_dim();
    let center_square = (sig.n() % 2 == 1).then(|| {
        let w = pseudoscalar(sig);
        w.geometric_product(&w).expect("same signature").coeff(0).clone()
    });
    let square_agrees = match &center_square {
        None => true,
        Some(s) => {
            let want = if classification.base == BaseDivision::C { -1 } else { 1 };
            *s == rat(want)
        }
    };
    let transport = transport_for(sig);
    let printed_table_agrees = printed_table_entry(p, q) == Some(classification);
    let agrees = dimension_agrees
        && center_dim == predicted_center_dim
        && square_agrees
        && transport.as_ref().is_none_or(|t| t.ok);
    Ok(ClassificationReport {
        p,
        q,
        classification,
        dimension,
        dimension_agrees,
        center_dim,
        predicted_center_dim,
        center_square,
        transport,
        printed_table_agrees,
        agrees,
    })
}

/// `g·m·g⁻¹`.
pub fn twisted_adjoint(g: &Multivector, m: &Multivector) -> Result<Multivector, CliffordError> {
    if !m.is_grade(1) {
        return Err(CliffordError::NotGradeOne);
    }
    let inv = g.inverse()?;
    g.geometric_product(m)?.geometric_product(&inv)
}

/// Images `g·eᵢ·g⁻¹` of the generators.
pub fn adjoint_images(g: &Multivector) -> Result<Vec<Multivector>, CliffordError> {
    let sig = g.signature();
    let inv = g.inverse()?;
    (0..sig.n())
        .map(|i| g.geometric_product(&Multivector::generator(sig, i))?.geometric_product(&inv))
        .collect()
}

fn matrix_from_images(sig: CliffordSignature, images: &[Multivector]) -> FieldMatrix {
    let n = sig.n();
    let mut b = FieldMatrix::zero(FieldSpec::Base(BaseField::Rationals), n, n);
    for (j, img) in images.iter().enumerate() {
        for (i, c) in img.vector_part().into_iter().enumerate() {
            b.set(i, j, Scalar::Base(Elem::Rat(c)));
        }
    }
    b
}

/// Matrix of `m ↦ g·m·g⁻¹` on `e₁, …, eₙ` (column `j` is the image of `e_j`).
pub fn induced_matrix(g: &Multivector) -> Result<FieldMatrix, CliffordError> {
    let images = adjoint_images(g)?;
    if images.iter().any(|x| !x.is_grade(1)) {
        return Err(CliffordError::NotGradeOne);
    }
    Ok(matrix_from_images(g.signature(), &images))
}

/// `Bᵀ·I_{p,q}·B = I_{p,q}`.
pub fn preserves_form(sig: CliffordSignature, b: &FieldMatrix) -> bool {
    let i = sig.metric();
    let lhs = b.transpose().try_mul(&i).and_then(|x| x.try_mul(b));
    lhs.is_ok_and(|x| x == i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub in_gamma: bool,
    pub in_even_part: bool,
    pub induced: Option<FieldMatrix>,
    pub induced_det: Option<BigRational>,
    /// Unit-vector factors, reported only when supplied and verified.
    pub spin_witness: Option<Vec<Multivector>>,
}

/// Clifford-group test for `g`; `factors` is a claimed factorization into
/// unit vectors, checked and echoed as a Spin witness when it has even length.
pub fn clifford_group_membership(
    g: &Multivector,
    factors: Option<&[Multivector]>,
) -> Result<Membership, CliffordError> {
    let sig = g.signature();
    let images = adjoint_images(g)?;
    let graded = images.iter().all(|x| x.is_grade(1));
    let (induced, in_gamma) = if graded {
        let b = matrix_from_images(sig, &images);
        let ok = preserves_form(sig, &b);
        (Some(b), ok)
    } else {
        (None, false)
    };
    let induced_det = match &induced {
        Some(b) => Some(
            det_field(b)
                .ok()
                .and_then(|d| d.to_base())
                .and_then(|e| e.as_rational().cloned())
                .ok_or(CliffordError::NotInvertible)?,
        ),
        None => None,
    };
    let in_even_part = g.is_even();
    let spin_witness = factors.and_then(|fs| {
        let valid = fs.len() % 2 == 0
            && fs.iter().all(|v| {
                v.signature() == sig && v.quadratic_form().is_ok_and(|qv| qv.abs().is_one())
            })
            && product(sig, fs).is_ok_and(|x| x == *g);
        valid.then(|| fs.to_vec())
    });
    Ok(Membership {
        in_gamma,
        in_even_part,
        induced,
        induced_det,
        spin_witness,
    })
}

/// `v₁·v₂⋯v_k`.
pub fn product(sig: CliffordSignature, factors: &[Multivector]) -> Result<Multivector, CliffordError> {
    factors
        .iter()
        .try_fold(Multivector::one(sig), |acc, v| acc.geometric_product(v))
}

/// Random vector with `Q(v) = ±1`: a signed generator, or a rational unit
/// vector in the plane of two generators.
pub fn random_unit_vector(sig: CliffordSignature, rng: &mut Rng) -> Multivector {
    let n = sig.n();
    let i = rng::random_index(rng, n);
    let sign = if rng::random_index(rng, 2) == 0 { rat(1) } else { rat(-1) };
    if n < 2 || rng::random_index(rng, 3) == 0 {
        return Multivector::generator(sig, i).scale(&sign);
    }
    let mut j = rng::random_index(rng, n - 1);
    if j >= i {
        j += 1;
    }
    let a = rng::random_index(rng, 4) as i64 + 2;
    let b = rng::random_index(rng, a as usize - 1) as i64 + 1;
    let (x, y) = if sig.square(i) == sig.square(j) {
        // ((a²−b²)/(a²+b²))² + (2ab/(a²+b²))² = 1
        let den = a * a + b * b;
        (BigRational::new((a * a - b * b).into(), den.into()), BigRational::new((2 * a * b).into(), den.into()))
    } else {
        // ((a²+b²)/2ab)² − ((a²−b²)/2ab)² = 1, larger part on the positive generator
        let den = 2 * a * b;
        let big = BigRational::new((a * a + b * b).into(), den.into());
        let small = BigRational::new((a * a - b * b).into(), den.into());
        if sig.square(i) > 0 {
            (big, small)
        } else {
            (small, big)
        }
    };
    let mut v = vec![BigRational::zero(); n];
    v[i] = x * &sign;
    v[j] = y;
    Multivector::vector(sig, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> CliffordSignature {
        CliffordSignature::new(p, q).unwrap()
    }

    fn mv(s: CliffordSignature, t: &str) -> Multivector {
        Multivector::parse(s, t).unwrap()
    }

    #[test]
    fn products() {
        let s = sig(1, 0);
        assert_eq!(mv(s, "e1").geometric_product(&mv(s, "e1")).unwrap(), Multivector::one(s));
        let s = sig(2, 0);
        assert_eq!(mv(s, "e1*e2"), mv(s, "e2*e1").scale(&rat(-1)));
        let s = sig(0, 2);
        let w = mv(s, "e12");
        assert_eq!(w.geometric_product(&w).unwrap(), mv(s, "-1"));
        assert!(mv(s, "e1").geometric_product(&Multivector::one(sig(1, 1))).is_err());
    }

    #[test]
    fn parse_print() {
        let s = sig(3, 0);
        let x = mv(s, "2 + e1*e2 - 3/4*e13 + e2");
        assert_eq!(x.to_string(), "2 + e2 + e12 - 3/4*e13");
        assert_eq!(mv(s, &x.to_string()), x);
        assert_eq!(mv(s, "e21"), mv(s, "-e12"));
        assert!(Multivector::parse(s, "e4").is_err());
        assert!(Multivector::parse(s, "").is_err());
        assert_eq!(parse_blade_key("13", 3), Some(0b101));
        assert_eq!(parse_blade_key("31", 3), None);
        assert_eq!(blade_key(0), "0");
    }

    #[test]
    fn involution_examples() {
        let s = sig(2, 0);
        assert_eq!(mv(s, "e1").grade_involution(), mv(s, "-e1"));
        assert_eq!(mv(s, "e12").reversion(), mv(s, "e2*e1"));
        let x = mv(s, "1 + e1 + e12");
        assert_eq!(x.clifford_conjugate(), mv(s, "1 - e1 - e12"));
    }

    #[test]
    fn classify_examples() {
        let c = |p, q| classify(p, q).unwrap();
        assert_eq!(c(0, 2), Classification { base: BaseDivision::H, matrix_size: 1, direct_sum: false });
        assert_eq!(c(1, 1), Classification { base: BaseDivision::R, matrix_size: 2, direct_sum: false });
        assert_eq!(c(2, 0), c(1, 1));
        assert_eq!(c(0, 0), Classification { base: BaseDivision::R, matrix_size: 1, direct_sum: false });
        assert_eq!(c(1, 0), Classification { base: BaseDivision::R, matrix_size: 1, direct_sum: true });
        assert_eq!(c(0, 1).base, BaseDivision::C);
        assert_eq!(c(0, 3), Classification { base: BaseDivision::H, matrix_size: 1, direct_sum: true });
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(c(p, q).real_dim(), 1u128 << (p + q));
            }
        }
        assert!(classify(40, 40).is_err());
    }

    #[test]
    fn verify_examples() {
        for (p, q) in [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)] {
            let r = verify_classification(p, q).unwrap();
            assert!(r.agrees, "({p},{q}) {r:?}");
            assert!(r.transport.as_ref().unwrap().ok);
        }
        let r = verify_classification(0, 1).unwrap();
        assert_eq!((r.center_dim, r.center_square.clone()), (2, Some(rat(-1))));
        assert!(!verify_classification(0, 1).unwrap().printed_table_agrees);
        assert!(verify_classification(3, 2).is_err());
    }

    #[test]
    fn inverse_and_adjoint() {
        let s = sig(2, 0);
        let g = mv(s, "e1");
        assert_eq!(g.inverse().unwrap(), g);
        assert_eq!(twisted_adjoint(&g, &mv(s, "e2")).unwrap(), mv(s, "-e2"));
        assert!(mv(s, "1 + e1").inverse().is_err());
        assert_eq!(twisted_adjoint(&g, &mv(s, "e12")), Err(CliffordError::NotGradeOne));
        let one = induced_matrix(&Multivector::one(s)).unwrap();
        assert_eq!(one, FieldMatrix::identity(one.spec().clone(), 2));
        let r = induced_matrix(&mv(s, "e12")).unwrap();
        assert_eq!(r.det().unwrap(), Scalar::Base(BaseField::Rationals.from_i64(1)));
    }

    #[test]
    fn membership() {
        let s = sig(3, 0);
        let m = clifford_group_membership(&mv(s, "e1"), None).unwrap();
        assert!(m.in_gamma && !m.in_even_part);
        let m = clifford_group_membership(&mv(s, "2 + e1"), None).unwrap();
        assert!(!m.in_gamma);
        let s = sig(0, 2);
        let fs = [mv(s, "e1"), mv(s, "e2")];
        let g = product(s, &fs).unwrap();
        let m = clifford_group_membership(&g, Some(&fs)).unwrap();
        assert!(m.in_gamma && m.in_even_part);
        assert_eq!(m.induced_det, Some(rat(1)));
        assert_eq!(m.spin_witness.unwrap().len(), 2);
    }

    #[test]
    fn unit_vectors() {
        let mut r = rng::seeded(3);
        for (p, q) in [(2, 2), (1, 3), (4, 0)] {
            let s = sig(p, q);
            for _ in 0..50 {
                let v = random_unit_vector(s, &mut r);
                assert!(v.quadratic_form().unwrap().abs().is_one());
            }
        }
    }

    #[test]
    fn center_parity() {
        for n in 0..=4 {
            for p in 0..=n {
                let d = center_dimension(sig(p, n - p));
                assert_eq!(d, if n % 2 == 0 { 1 } else { 2 });
            }
        }
    }
}
