//! Exact scalars: rationals, prime fields and quadratic algebras `k[√a]`.
//!
//! A [`QuadExt`] is allowed to have a square parameter `a`; it then models
//! the split algebra `k ⊕ k` and invertibility is decided by the norm
//! `x·τ(x)` rather than assumed.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest accepted prime; residues are multiplied in `u128`.
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("operands live in different fields ({0} vs {1})")]
    SpecMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound")]
    PrimeTooLarge(u64),
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("quadratic parameter must be nonzero")]
    ZeroParameter,
    #[error("element is not in a quadratic extension")]
    NotQuadExt,
    #[error("inverse of zero")]
    ZeroInput,
    #[error("{0} is a zero divisor")]
    ZeroDivisor(String),
}

/// Base fields: ℚ or 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(BaseField::Prime(p))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            BaseField::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
            BaseField::Prime(p) => Elem::Mod {
                value: v.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Elem {
        self.from_i64(num) * &self.from_i64(den).inverse().expect("nonzero denominator")
    }

    /// Maps an integer into the field.
    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            BaseField::Rationals => Elem::Rat(BigRational::from_integer(v.clone())),
            BaseField::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Elem::Mod {
                    value: r.to_u64().expect("residue fits"),
                    p: *p,
                }
            }
        }
    }

    /// Every element, for finite fields.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some((0..*p).map(|value| Elem::Mod { value, p: *p }).collect()),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An element of ℚ or 𝔽_p. Residues are canonical in `[0, p)`; rationals
/// are kept in lowest terms by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Elem {
    pub fn field(&self) -> BaseField {
        match self {
            Elem::Rat(_) => BaseField::Rationals,
            Elem::Mod { p, .. } => BaseField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_one(),
            Elem::Mod { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Elem {
        self.field().zero()
    }

    pub fn one_like(&self) -> Elem {
        self.field().one()
    }

    fn check(&self, other: &Elem) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Mod { value: a, p }, Elem::Mod { value: b, .. }) => Elem::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Elem) -> Result<Elem, FieldError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Mod { value: a, p }, Elem::Mod { value: b, .. }) => Elem::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Elem::Rat(r) => Elem::Rat(r.recip()),
            Elem::Mod { value, p } => {
                let g = BigInt::from(*value).extended_gcd(&BigInt::from(*p));
                let inv = g.x.mod_floor(&BigInt::from(*p));
                Elem::Mod {
                    value: inv.to_u64().expect("residue fits"),
                    p: *p,
                }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rat(r) => Some(r),
            Elem::Mod { .. } => None,
        }
    }

    /// Square root in the base field if one exists.
    pub fn sqrt(&self) -> Option<Elem> {
        match self {
            Elem::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Elem::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Elem::Mod { value, p } => sqrt_mod(*value, *p).map(|value| Elem::Mod { value, p: *p }),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Tonelli-Shanks; `None` when `v` is a non-residue.
fn sqrt_mod(v: u64, p: u64) -> Option<u64> {
    let v = v % p;
    if v == 0 || p == 2 {
        return Some(v);
    }
    if pow_mod(v, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(v, q, p);
    let mut r = pow_mod(v, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulm(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r.min(p - r))
}

macro_rules! elem_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Elem> for &Elem {
            type Output = Elem;
            /// Panics when the operands live in different fields; use the
            /// `try_*` methods for checked arithmetic.
            fn $m(self, rhs: &Elem) -> Elem {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl std::ops::$tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
        impl std::ops::$tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                (&self).$checked(rhs).expect("field mismatch")
            }
        }
    };
}
elem_binop!(Add, add, try_add);
elem_binop!(Sub, sub, try_sub);
elem_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Rat(r) => Elem::Rat(-r),
            Elem::Mod { value, p } => Elem::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => write!(f, "{r}"),
            Elem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Three-valued squareness answer. Over 𝔽_p and ℚ the answer is always
/// decided; `Undecided` is kept for callers that combine it with bounded
/// searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Squareness of a base-field element (Euler criterion over 𝔽_p, perfect
/// square test of numerator and denominator over ℚ).
pub fn is_square(a: &Elem) -> Decision {
    if a.sqrt().is_some() {
        Decision::Yes
    } else {
        Decision::No
    }
}

/// `k[√a]`; `sqrt_a` is present exactly when the algebra is split.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    base: BaseField,
    a: Elem,
    sqrt_a: Option<Elem>,
}

impl QuadExt {
    pub fn new(a: Elem) -> Result<Arc<Self>, FieldError> {
        let base = a.field();
        if base.characteristic() == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if a.is_zero() {
            return Err(FieldError::ZeroParameter);
        }
        let sqrt_a = a.sqrt();
        Ok(Arc::new(QuadExt { base, a, sqrt_a }))
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn param(&self) -> &Elem {
        &self.a
    }

    /// A square root of `a` in the base, present iff `k[√a] ≅ k ⊕ k`.
    pub fn split_root(&self) -> Option<&Elem> {
        self.sqrt_a.as_ref()
    }

    pub fn is_split(&self) -> bool {
        self.sqrt_a.is_some()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[sqrt({})]", self.base, self.a)
    }
}

/// Field (or split quadratic algebra) an element lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Base(BaseField),
    Quad(Arc<QuadExt>),
}

impl FieldSpec {
    pub fn base(&self) -> BaseField {
        match self {
            FieldSpec::Base(b) => *b,
            FieldSpec::Quad(q) => q.base,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Base(b) => Scalar::Base(b.zero()),
            FieldSpec::Quad(q) => Scalar::quad(q, q.base.zero(), q.base.zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Base(b) => Scalar::Base(b.one()),
            FieldSpec::Quad(q) => Scalar::quad(q, q.base.one(), q.base.zero()),
        }
    }

    /// Embeds a base element.
    pub fn embed(&self, x: Elem) -> Scalar {
        match self {
            FieldSpec::Base(_) => Scalar::Base(x),
            FieldSpec::Quad(q) => Scalar::quad(q, x, q.base.zero()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Base(b) => write!(f, "{b}"),
            FieldSpec::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// A scalar: a base element or `re + im·√a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Base(Elem),
    Quad {
        ext: Arc<QuadExt>,
        re: Elem,
        im: Elem,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic on two scalars of the same field.
pub fn scalar_arith(op: ArithOp, lhs: &Scalar, rhs: &Scalar) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
    }
}

impl Scalar {
    pub fn quad(ext: &Arc<QuadExt>, re: Elem, im: Elem) -> Scalar {
        debug_assert_eq!(re.field(), ext.base);
        debug_assert_eq!(im.field(), ext.base);
        Scalar::Quad {
            ext: ext.clone(),
            re,
            im,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Base(e) => FieldSpec::Base(e.field()),
            Scalar::Quad { ext, .. } => FieldSpec::Quad(ext.clone()),
        }
    }

    fn same_spec(&self, other: &Scalar) -> Result<(), FieldError> {
        let ok = match (self, other) {
            (Scalar::Base(a), Scalar::Base(b)) => a.field() == b.field(),
            (Scalar::Quad { ext: a, .. }, Scalar::Quad { ext: b, .. }) => a == b,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch(
                self.spec().to_string(),
                other.spec().to_string(),
            ))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Base(e) => e.is_zero(),
            Scalar::Quad { re, im, .. } => re.is_zero() && im.is_zero(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.spec().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.spec().one()
    }

    /// Real and `√a` parts; a base element has zero second part.
    pub fn parts(&self) -> (Elem, Elem) {
        match self {
            Scalar::Base(e) => (e.clone(), e.zero_like()),
            Scalar::Quad { re, im, .. } => (re.clone(), im.clone()),
        }
    }

    /// The base element when the `√a` part vanishes.
    pub fn to_base(&self) -> Option<Elem> {
        match self {
            Scalar::Base(e) => Some(e.clone()),
            Scalar::Quad { re, im, .. } => im.is_zero().then(|| re.clone()),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_spec(other)?;
        Ok(match (self, other) {
            (Scalar::Base(a), Scalar::Base(b)) => Scalar::Base(a + b),
            (Scalar::Quad { ext, re: a, im: b }, Scalar::Quad { re: c, im: d, .. }) => {
                Scalar::quad(ext, a + c, b + d)
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_spec(other)?;
        Ok(match (self, other) {
            (Scalar::Base(a), Scalar::Base(b)) => Scalar::Base(a * b),
            (Scalar::Quad { ext, re: a, im: b }, Scalar::Quad { re: c, im: d, .. }) => {
                // (a + b√s)(c + d√s) = (ac + s·bd) + (ad + bc)√s
                let re = a * c + &(&ext.a * &(b * d));
                let im = a * d + b * c;
                Scalar::quad(ext, re, im)
            }
            _ => unreachable!(),
        })
    }

    /// Multiplies by a base-field element.
    pub fn scale(&self, c: &Elem) -> Scalar {
        match self {
            Scalar::Base(e) => Scalar::Base(e * c),
            Scalar::Quad { ext, re, im } => Scalar::quad(ext, re * c, im * c),
        }
    }

    /// `x·τ(x)`, always in the base field.
    pub fn norm(&self) -> Elem {
        match self {
            Scalar::Base(e) => e * e,
            Scalar::Quad { ext, re, im } => re * re - &ext.a * &(im * im),
        }
    }

    pub fn invert(&self) -> Result<Scalar, FieldError> {
        invert_scalar(self)
    }
}

/// The conjugation `x + y√a ↦ x − y√a`.
pub fn tau(x: &Scalar) -> Result<Scalar, FieldError> {
    match x {
        Scalar::Base(_) => Err(FieldError::NotQuadExt),
        Scalar::Quad { ext, re, im } => Ok(Scalar::quad(ext, re.clone(), -im)),
    }
}

/// Inverse via `x⁻¹ = τ(x)/N(x)`; a nonzero element with zero norm is a
/// zero divisor of the split algebra.
pub fn invert_scalar(x: &Scalar) -> Result<Scalar, FieldError> {
    if x.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    match x {
        Scalar::Base(e) => Ok(Scalar::Base(e.inverse().expect("nonzero"))),
        Scalar::Quad { .. } => {
            let n = x.norm();
            let inv = n
                .inverse()
                .ok_or_else(|| FieldError::ZeroDivisor(x.to_string()))?;
            Ok(tau(x)?.scale(&inv))
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
    };
}
scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Base(e) => Scalar::Base(-e),
            Scalar::Quad { ext, re, im } => Scalar::quad(ext, -re, -im),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Base(e) => write!(f, "{e}"),
            Scalar::Quad { ext, re, im } => write!(f, "{re} + {im}*sqrt({})", ext.a),
        }
    }
}
