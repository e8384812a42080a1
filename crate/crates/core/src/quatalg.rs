//! Quaternion algebras `(a,b)_k` and the matrix algebra `Mat(2,k)`.
//!
//! Multiplication goes through a structure-constant table generated once
//! per algebra from the defining relations and checked for associativity on
//! all 64 basis triples.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactfields::{tau, BaseField, Elem, FieldError, QuadExt, Scalar};
use crate::linalg::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("{0} has zero norm and is not invertible")]
    NotInvertible(String),
    #[error("structure constants are not associative at basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),
    #[error("this operation needs the (a,b) presentation, which does not exist in characteristic 2")]
    NoStandardForm,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How the four coordinates of an element are read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuatKind {
    /// Basis `1, u, v, w = uv` with `u² = a`, `v² = b`, `uv = −vu`.
    Standard { a: Elem, b: Elem },
    /// `Mat(2,k)` in matrix-unit coordinates `(e11, e12, e21, e22)`.
    Matrix2,
}

/// One nonzero structure constant: `e_i · e_j = c · e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Product {
    k: usize,
    c: Elem,
}

#[derive(Debug, Clone)]
pub struct QuatAlgebra {
    base: BaseField,
    kind: QuatKind,
    table: [[Option<Product>; 4]; 4],
    subfield: Option<Arc<QuadExt>>,
}

impl PartialEq for QuatAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.kind == other.kind
    }
}
impl Eq for QuatAlgebra {}

fn standard_table(a: &Elem, b: &Elem) -> [[Option<Product>; 4]; 4] {
    // e_i = u^{α} v^{β} with i = α + 2β. Moving v^{β1} past u^{α2} costs
    // (−1)^{β1·α2}; u² = a and v² = b absorb the overlaps.
    let one = a.one_like();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (a1, b1) = (i & 1, i >> 1);
            let (a2, b2) = (j & 1, j >> 1);
            let mut c = one.clone();
            if b1 & a2 == 1 {
                c = -c;
            }
            if a1 & a2 == 1 {
                c = &c * a;
            }
            if b1 & b2 == 1 {
                c = &c * b;
            }
            Some(Product {
                k: (a1 ^ a2) | ((b1 ^ b2) << 1),
                c,
            })
        })
    })
}

fn matrix_unit_table(base: BaseField) -> [[Option<Product>; 4]; 4] {
    // index = 2·row + col; E_rc · E_st = δ_cs E_rt
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (r, c) = (i / 2, i % 2);
            let (s, t) = (j / 2, j % 2);
            (c == s).then(|| Product {
                k: 2 * r + t,
                c: base.one(),
            })
        })
    })
}

impl QuatAlgebra {
    /// `(a,b)_k`; rejects zero parameters and characteristic 2.
    pub fn new(a: Elem, b: Elem) -> Result<Arc<Self>, QuatError> {
        let base = a.field();
        if b.field() != base {
            return Err(FieldError::SpecMismatch(base.to_string(), b.field().to_string()).into());
        }
        if base.characteristic() == 2 {
            return Err(FieldError::CharacteristicTwo.into());
        }
        if a.is_zero() || b.is_zero() {
            return Err(FieldError::ZeroParameter.into());
        }
        let table = standard_table(&a, &b);
        let subfield = Some(QuadExt::new(a.clone())?);
        let alg = QuatAlgebra {
            base,
            kind: QuatKind::Standard { a, b },
            table,
            subfield,
        };
        alg.check_associative()?;
        Ok(Arc::new(alg))
    }

    /// `Mat(2,k)` with matrix-unit coordinates. Valid in every
    /// characteristic, including 2.
    pub fn mat2(base: BaseField) -> Arc<Self> {
        let alg = QuatAlgebra {
            base,
            kind: QuatKind::Matrix2,
            table: matrix_unit_table(base),
            subfield: None,
        };
        alg.check_associative().expect("matrix units are associative");
        Arc::new(alg)
    }

    /// The split algebra `(1,−1)_k`.
    pub fn split_standard(base: BaseField) -> Result<Arc<Self>, QuatError> {
        QuatAlgebra::new(base.one(), base.from_i64(-1))
    }

    /// Hamilton's quaternions `(−1,−1)_ℚ`.
    pub fn hamilton() -> Arc<Self> {
        let q = BaseField::Rationals;
        QuatAlgebra::new(q.from_i64(-1), q.from_i64(-1)).expect("valid parameters")
    }

    fn check_associative(&self) -> Result<(), QuatError> {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    let left = self.mul_coeffs(&self.mul_coeffs(&ei, &ej), &ek);
                    let right = self.mul_coeffs(&ei, &self.mul_coeffs(&ej, &ek));
                    if left != right {
                        return Err(QuatError::NotAssociative((i, j, k)));
                    }
                }
            }
        }
        Ok(())
    }

    fn basis(&self, i: usize) -> [Elem; 4] {
        std::array::from_fn(|k| if k == i { self.base.one() } else { self.base.zero() })
    }

    fn mul_coeffs(&self, x: &[Elem; 4], y: &[Elem; 4]) -> [Elem; 4] {
        let mut out: [Elem; 4] = std::array::from_fn(|_| self.base.zero());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                if let Some(p) = &self.table[i][j] {
                    out[p.k] = &out[p.k] + &(&(xi * yj) * &p.c);
                }
            }
        }
        out
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn kind(&self) -> &QuatKind {
        &self.kind
    }

    /// `(a, b)` when the algebra is presented by generators.
    pub fn params(&self) -> Option<(&Elem, &Elem)> {
        match &self.kind {
            QuatKind::Standard { a, b } => Some((a, b)),
            QuatKind::Matrix2 => None,
        }
    }

    /// Whether a `Mat(2,k)` realization is registered: the matrix-unit
    /// algebra itself, or `(1,−1)_k` through its matrix basis.
    pub fn has_matrix_form(&self) -> bool {
        match &self.kind {
            QuatKind::Matrix2 => true,
            QuatKind::Standard { a, b } => a.is_one() && (-b).is_one(),
        }
    }

    /// `L = k(√a)`, the subalgebra spanned by `1, u`.
    pub fn subfield(&self) -> Result<Arc<QuadExt>, QuatError> {
        self.subfield.clone().ok_or(QuatError::NoStandardForm)
    }

    pub fn element(self: &Arc<Self>, coeffs: [Elem; 4]) -> Result<Quaternion, QuatError> {
        if coeffs.iter().any(|c| c.field() != self.base) {
            return Err(FieldError::SpecMismatch(self.base.to_string(), "coefficient".into()).into());
        }
        Ok(Quaternion {
            alg: self.clone(),
            c: coeffs,
        })
    }

    pub fn from_i64(self: &Arc<Self>, coeffs: [i64; 4]) -> Quaternion {
        Quaternion {
            alg: self.clone(),
            c: coeffs.map(|v| self.base.from_i64(v)),
        }
    }

    pub fn zero(self: &Arc<Self>) -> Quaternion {
        self.from_i64([0; 4])
    }

    pub fn one(self: &Arc<Self>) -> Quaternion {
        self.scalar(self.base.one())
    }

    /// `c·1`.
    pub fn scalar(self: &Arc<Self>, c: Elem) -> Quaternion {
        let z = self.base.zero();
        let coeffs = match self.kind {
            QuatKind::Standard { .. } => [c, z.clone(), z.clone(), z],
            QuatKind::Matrix2 => [c.clone(), z.clone(), z, c],
        };
        Quaternion {
            alg: self.clone(),
            c: coeffs,
        }
    }

    /// Basis element `i` (1, u, v, w or a matrix unit).
    pub fn basis_element(self: &Arc<Self>, i: usize) -> Quaternion {
        Quaternion {
            alg: self.clone(),
            c: self.basis(i),
        }
    }
}

impl fmt::Display for QuatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            QuatKind::Standard { a, b } => write!(f, "({a},{b})_{}", self.base),
            QuatKind::Matrix2 => write!(f, "Mat(2,{})", self.base),
        }
    }
}

/// An element `x₀ + x₁u + x₂v + x₃w` (or a 2×2 matrix in unit coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion {
    alg: Arc<QuatAlgebra>,
    c: [Elem; 4],
}

impl Quaternion {
    pub fn algebra(&self) -> &Arc<QuatAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Elem; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Elem::is_zero)
    }

    fn check(&self, other: &Quaternion) -> Result<(), QuatError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(QuatError::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        Ok(Quaternion {
            alg: self.alg.clone(),
            c: std::array::from_fn(|i| &self.c[i] + &other.c[i]),
        })
    }

    pub fn try_sub(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        Ok(Quaternion {
            alg: self.alg.clone(),
            c: std::array::from_fn(|i| &self.c[i] - &other.c[i]),
        })
    }

    /// Product from the structure-constant table.
    pub fn try_mul(&self, other: &Quaternion) -> Result<Quaternion, QuatError> {
        self.check(other)?;
        Ok(Quaternion {
            alg: self.alg.clone(),
            c: self.alg.mul_coeffs(&self.c, &other.c),
        })
    }

    pub fn neg(&self) -> Quaternion {
        Quaternion {
            alg: self.alg.clone(),
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }

    /// Multiplies by a base-field scalar.
    pub fn scale(&self, s: &Elem) -> Quaternion {
        Quaternion {
            alg: self.alg.clone(),
            c: std::array::from_fn(|i| &self.c[i] * s),
        }
    }

    /// `x₀ − x₁u − x₂v − x₃w`; the adjugate in the matrix-unit form.
    pub fn conjugate(&self) -> Quaternion {
        let [x0, x1, x2, x3] = &self.c;
        let c = match self.alg.kind {
            QuatKind::Standard { .. } => [x0.clone(), -x1, -x2, -x3],
            QuatKind::Matrix2 => [x3.clone(), -x1, -x2, x0.clone()],
        };
        Quaternion {
            alg: self.alg.clone(),
            c,
        }
    }

    /// The base element `c` when `self = c·1`.
    pub fn as_scalar(&self) -> Option<Elem> {
        let [x0, x1, x2, x3] = &self.c;
        match self.alg.kind {
            QuatKind::Standard { .. } => {
                (x1.is_zero() && x2.is_zero() && x3.is_zero()).then(|| x0.clone())
            }
            QuatKind::Matrix2 => (x1.is_zero() && x2.is_zero() && x0 == x3).then(|| x0.clone()),
        }
    }

    /// `N(z) = z·z̄`, read off the identity component.
    pub fn norm(&self) -> Elem {
        let prod = self.try_mul(&self.conjugate()).expect("same algebra");
        prod.as_scalar().expect("z·z̄ is central")
    }

    /// `z̄ / N(z)`.
    pub fn inverse(&self) -> Result<Quaternion, QuatError> {
        let n = self.norm();
        let inv = n
            .inverse()
            .ok_or_else(|| QuatError::NotInvertible(self.to_string()))?;
        Ok(self.conjugate().scale(&inv))
    }

    /// Coordinates `(x, y)` in `L = k(√a)` with `z = x + v·y`, where `u`
    /// is identified with `√a`.
    pub fn cayley_dickson_coords(&self) -> Result<(Scalar, Scalar), QuatError> {
        let ext = self.alg.subfield()?;
        let [x0, x1, x2, x3] = &self.c;
        // v·(y₀ + y₁u) = y₀v + y₁vu = y₀v − y₁w
        Ok((
            Scalar::quad(&ext, x0.clone(), x1.clone()),
            Scalar::quad(&ext, x2.clone(), -x3),
        ))
    }

    /// Inverse of [`Quaternion::cayley_dickson_coords`].
    pub fn from_cayley_dickson(alg: &Arc<QuatAlgebra>, x: &Scalar, y: &Scalar) -> Result<Quaternion, QuatError> {
        let ext = alg.subfield()?;
        for s in [x, y] {
            match s {
                Scalar::Quad { ext: e, .. } if **e == *ext => {}
                _ => return Err(QuatError::AlgebraMismatch),
            }
        }
        let (x0, x1) = x.parts();
        let (y0, y1) = y.parts();
        alg.element([x0, x1, y0, -y1])
    }

    /// `σ(z) = [[x, −τ(y)], [−b·y, τ(x)]]` over `L`.
    pub fn symplectic(&self) -> Result<[[Scalar; 2]; 2], QuatError> {
        let (_, b) = self.alg.params().ok_or(QuatError::NoStandardForm)?;
        let (x, y) = self.cayley_dickson_coords()?;
        Ok([
            [x.clone(), -tau(&y)?],
            [-y.scale(b), tau(&x)?],
        ])
    }

    /// The 2×2 matrix over `k` under the registered `Mat(2,k)` realization.
    pub fn to_block(&self) -> Option<[[Elem; 2]; 2]> {
        if !self.alg.has_matrix_form() {
            return None;
        }
        let [x0, x1, x2, x3] = &self.c;
        Some(match self.alg.kind {
            QuatKind::Matrix2 => [[x0.clone(), x1.clone()], [x2.clone(), x3.clone()]],
            // 1 ↦ I, u ↦ diag(1,−1), v ↦ [[0,−1],[1,0]], w ↦ [[0,−1],[−1,0]]
            QuatKind::Standard { .. } => [[x0 + x1, -x2 - x3], [x2 - x3, x0 - x1]],
        })
    }

    /// Inverse of [`Quaternion::to_block`].
    pub fn from_block(alg: &Arc<QuatAlgebra>, m: &[[Elem; 2]; 2]) -> Option<Quaternion> {
        if !alg.has_matrix_form() {
            return None;
        }
        let [[p, q], [r, s]] = m;
        let coeffs = match alg.kind {
            QuatKind::Matrix2 => [p.clone(), q.clone(), r.clone(), s.clone()],
            QuatKind::Standard { .. } => {
                let half = alg.base.from_i64(2).inverse()?;
                [
                    &(p + s) * &half,
                    &(p - s) * &half,
                    &(r - q) * &half,
                    &(-q - r) * &half,
                ]
            }
        };
        alg.element(coeffs).ok()
    }
}

impl Ring for Quaternion {
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }
    fn one_like(&self) -> Self {
        self.alg.one()
    }
    fn is_zero(&self) -> bool {
        Quaternion::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("same algebra")
    }
    fn minus(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same algebra")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same algebra")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

/// Checked product of two quaternions.
pub fn quat_mul(lhs: &Quaternion, rhs: &Quaternion) -> Result<Quaternion, QuatError> {
    lhs.try_mul(rhs)
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = &self.c;
        match self.alg.kind {
            QuatKind::Standard { .. } => write!(f, "{x0} + {x1}u + {x2}v + {x3}w"),
            QuatKind::Matrix2 => write!(f, "[[{x0}, {x1}], [{x2}, {x3}]]"),
        }
    }
}

/// Transports an element of `(a,b)_k` into `(b,a)_k` via `u ↔ v`, `w ↦ −w`.
pub fn swap_isomorphism(z: &Quaternion, target: &Arc<QuatAlgebra>) -> Result<Quaternion, QuatError> {
    let (a, b) = z.alg.params().ok_or(QuatError::NoStandardForm)?;
    match target.params() {
        Some((ta, tb)) if ta == b && tb == a => {}
        _ => return Err(QuatError::AlgebraMismatch),
    }
    let [x0, x1, x2, x3] = &z.c;
    target.element([x0.clone(), x2.clone(), x1.clone(), -x3])
}

/// Checks that the matrix basis `1₂, u, v, w` reproduces the products of
/// `(1,−1)_k` entry by entry.
pub fn verify_matrix_basis(base: BaseField) -> Result<bool, QuatError> {
    let alg = QuatAlgebra::split_standard(base)?;
    let mat = QuatAlgebra::mat2(base);
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (alg.basis_element(i), alg.basis_element(j));
            let prod = x.try_mul(&y)?.to_block().expect("matrix form");
            let bx = mat_from(&mat, &x);
            let by = mat_from(&mat, &y);
            let via = bx.try_mul(&by)?.to_block().expect("matrix form");
            if prod != via {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn mat_from(mat: &Arc<QuatAlgebra>, z: &Quaternion) -> Quaternion {
    Quaternion::from_block(mat, &z.to_block().expect("matrix form")).expect("matrix form")
}

/// Converts between the two registered realizations of the split algebra.
pub fn to_matrix_units(z: &Quaternion) -> Option<Quaternion> {
    let mat = QuatAlgebra::mat2(z.alg.base);
    Quaternion::from_block(&mat, &z.to_block()?)
}

/// Result of a splitness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitness {
    /// Split, with a nonzero element of norm zero as witness.
    Split(Quaternion),
    Nonsplit,
    Undecided,
}

impl Splitness {
    pub fn label(&self) -> &'static str {
        match self {
            Splitness::Split(_) => "split",
            Splitness::Nonsplit => "nonsplit",
            Splitness::Undecided => "undecided",
        }
    }
}

/// Default box for the bounded searches over ℚ.
pub const RATIONAL_SEARCH_BOUND: i64 = 50;

/// Splitness of a quaternion algebra.
///
/// Over 𝔽_p a zero divisor with `x₃ = 0` is searched for; one always exists
/// because a ternary quadratic form over a finite field is isotropic. Over ℚ
/// the answer is `Nonsplit` only for positive-definite norm forms
/// (`a < 0`, `b < 0`), `Split` when a bounded search finds a zero divisor or
/// writes `a` as a sum of two squares for `b = −1`, and `Undecided`
/// otherwise.
pub fn is_split(alg: &Arc<QuatAlgebra>) -> Splitness {
    is_split_bounded(alg, RATIONAL_SEARCH_BOUND)
}

pub fn is_split_bounded(alg: &Arc<QuatAlgebra>, bound: i64) -> Splitness {
    let (a, b) = match alg.params() {
        None => return Splitness::Split(alg.basis_element(0)),
        Some((a, b)) => (a.clone(), b.clone()),
    };
    match alg.base {
        BaseField::Prime(p) => {
            let f = alg.base;
            for x1 in 0..p as i64 {
                for x2 in 0..p as i64 {
                    if x1 == 0 && x2 == 0 {
                        continue;
                    }
                    let (e1, e2) = (f.from_i64(x1), f.from_i64(x2));
                    let rhs = &(&a * &(&e1 * &e1)) + &(&b * &(&e2 * &e2));
                    if let Some(x0) = rhs.sqrt() {
                        let z = alg.element([x0, e1, e2, f.zero()]).expect("same field");
                        debug_assert!(z.norm().is_zero());
                        return Splitness::Split(z);
                    }
                }
            }
            unreachable!("ternary forms over finite fields are isotropic")
        }
        BaseField::Rationals => {
            let (ra, rb) = (a.as_rational().unwrap(), b.as_rational().unwrap());
            if ra.is_negative() && rb.is_negative() {
                return Splitness::Nonsplit;
            }
            if let Some(z) = rational_zero_divisor(alg, &a, &b, bound) {
                return Splitness::Split(z);
            }
            if (-&b).is_one() {
                if let Some(z) = two_squares(&a, bound).and_then(|(s, t)| two_squares_witness(alg, &s, &t)) {
                    return Splitness::Split(z);
                }
            }
            Splitness::Undecided
        }
    }
}

/// Integer vectors `(x₁, x₂, x₃)` in `[−bound, bound]³` with
/// `a x₁² + b x₂² − ab x₃²` a rational square `x₀²`. Coordinates are tried
/// in the order `0, 1, −1, 2, −2, …` so small witnesses come first.
fn rational_zero_divisor(alg: &Arc<QuatAlgebra>, a: &Elem, b: &Elem, bound: i64) -> Option<Quaternion> {
    let q = BaseField::Rationals;
    let ra = a.as_rational()?;
    let rb = b.as_rational()?;
    let (an, ad) = (ra.numer().clone(), ra.denom().clone());
    let (bn, bd) = (rb.numer().clone(), rb.denom().clone());
    // (x₀·ad·bd)² = (an·bd·x₁² + bn·ad·x₂² − an·bn·x₃²)·ad·bd
    let scale = &ad * &bd;
    let c1 = (&an * &bd * &scale).to_i128()?;
    let c2 = (&bn * &ad * &scale).to_i128()?;
    let c3 = (-(&an * &bn) * &scale).to_i128()?;
    let order: Vec<i64> = std::iter::once(0)
        .chain((1..=bound).flat_map(|h| [h, -h]))
        .collect();
    for &x1 in &order {
        for &x2 in &order {
            for &x3 in &order {
                if (x1, x2, x3) == (0, 0, 0) {
                    continue;
                }
                let sq = |x: i64| (x as i128) * (x as i128);
                let val = c1
                    .checked_mul(sq(x1))?
                    .checked_add(c2.checked_mul(sq(x2))?)?
                    .checked_add(c3.checked_mul(sq(x3))?)?;
                if val < 0 {
                    continue;
                }
                let r = BigInt::from(val).sqrt();
                if &r * &r == BigInt::from(val) {
                    let x0 = Elem::Rat(num_rational::BigRational::new(r, scale.clone()));
                    let z = alg
                        .element([x0, q.from_i64(x1), q.from_i64(x2), q.from_i64(x3)])
                        .ok()?;
                    debug_assert!(z.norm().is_zero());
                    return Some(z);
                }
            }
        }
    }
    None
}

/// `a = s² + t²` over ℚ, searched as `n·d = S² + T²` for `a = n/d`
/// with `S ≤ bound²`.
fn two_squares(a: &Elem, bound: i64) -> Option<(Elem, Elem)> {
    let r = a.as_rational()?;
    if r.is_negative() {
        return None;
    }
    let nd: BigInt = r.numer() * r.denom();
    let limit = (bound * bound) as u64;
    let mut s = BigInt::zero();
    while s.to_u64()? <= limit && &s * &s <= nd {
        let rest = &nd - &s * &s;
        let t = rest.sqrt();
        if &t * &t == rest {
            let d = r.denom().clone();
            let q = |v: BigInt| Elem::Rat(num_rational::BigRational::new(v, d.clone()));
            return Some((q(s), q(t)));
        }
        s += 1;
    }
    None
}

fn two_squares_witness(alg: &Arc<QuatAlgebra>, s: &Elem, t: &Elem) -> Option<Quaternion> {
    // b = −1: N(x₀ + x₁u + x₂v + x₃w) = x₀² − a x₁² + x₂² − a x₃².
    // Take x₁ = 1, x₀ = s, x₂ = t: s² − a + t² = 0.
    let f = alg.base;
    let z = alg
        .element([s.clone(), f.one(), t.clone(), f.zero()])
        .ok()?;
    z.norm().is_zero().then_some(z)
}
