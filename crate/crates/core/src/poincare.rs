//! Integer polynomials in `t` and Poincaré polynomials of homogeneous spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("division is not exact, remainder {remainder}")]
    InexactDivision { remainder: UniPoly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("rank mismatch: {g} degrees against {u}")]
    RankMismatch { g: usize, u: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no formula for n={n}, p={p}, q={q}: the odd case needs p even")]
    BranchUnavailable { n: usize, p: usize, q: usize },
    #[error("cannot parse Weyl type {0:?}")]
    Parse(String),
}

/// Polynomial in `t` with integer coefficients; `coeffs[i]` multiplies `t^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From sparse `(degree, coefficient)` pairs.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let top = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut c = vec![BigInt::zero(); top];
        for &(d, v) in terms {
            c[d] += v;
        }
        UniPoly::new(c)
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::from_i64(&[1])
    }

    /// `c·t^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        UniPoly::from_terms(&[(d, c)])
    }

    /// `1 − t^d`.
    pub fn one_minus(d: usize) -> Self {
        UniPoly::one().sub(&UniPoly::monomial(1, d))
    }

    /// `1 + t^d`.
    pub fn one_plus(d: usize) -> Self {
        UniPoly::one().add(&UniPoly::monomial(1, d))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    /// Quotient and remainder over ℤ; requires every step's leading
    /// coefficient to divide.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PoincareError> {
        let Some(dd) = divisor.degree() else {
            return Err(PoincareError::DivisionByZero);
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                break;
            }
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, PoincareError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PoincareError::InexactDivision { remainder: r })
        }
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a UniPoly>) -> UniPoly {
        factors.into_iter().fold(UniPoly::one(), |acc, f| acc.mul(f))
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_text(&self) -> String {
        render(self, |d| format!("t^{d}"))
    }

    pub fn to_latex(&self) -> String {
        render(self, |d| format!("t^{{{d}}}"))
    }

    /// Sparse map from degree (as a string key) to coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms()
            .map(|(d, c)| (d.to_string(), bigint_json(c)))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Option<UniPoly> {
        let obj = v.as_object()?;
        let mut terms = BTreeMap::new();
        for (k, c) in obj {
            let d: usize = k.parse().ok()?;
            let c = match c {
                serde_json::Value::Number(n) => BigInt::from(n.as_i64()?),
                serde_json::Value::String(s) => s.parse().ok()?,
                _ => return None,
            };
            terms.insert(d, c);
        }
        let top = terms.keys().next_back().map_or(0, |d| d + 1);
        let mut c = vec![BigInt::zero(); top];
        for (d, v) in terms {
            c[d] = v;
        }
        Some(UniPoly::new(c))
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn bigint_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(c.to_string()),
    }
}

fn render(p: &UniPoly, power: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (d, c) in p.terms() {
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        match d {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&if d == 1 { "t".to_string() } else { power(d) });
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Polynomial operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    ExactDiv,
}

pub fn poly_arith(op: PolyOp, lhs: &UniPoly, rhs: &UniPoly) -> Result<UniPoly, PoincareError> {
    match op {
        PolyOp::Add => Ok(lhs.add(rhs)),
        PolyOp::Mul => Ok(lhs.mul(rhs)),
        PolyOp::ExactDiv => lhs.exact_div(rhs),
    }
}

/// Irreducible factor types with their fundamental invariant degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylType {
    /// `A(k)`: degrees `2, 3, …, k+1`.
    A(usize),
    /// `BC(n)`: degrees `2, 4, …, 2n`.
    BC(usize),
    /// `D(n)`, `n ≥ 2`: degrees `2, 4, …, 2n−2, n`.
    D(usize),
    /// `U(1)·SU(n)`: degrees `2` and `2, 3, …, n`.
    U1SU(usize),
}

impl WeylType {
    pub fn degrees(&self) -> Vec<usize> {
        match *self {
            WeylType::A(k) => (2..=k + 1).collect(),
            WeylType::BC(n) => (1..=n).map(|i| 2 * i).collect(),
            WeylType::D(n) => (1..n).map(|i| 2 * i).chain([n]).collect(),
            WeylType::U1SU(n) => std::iter::once(2).chain(2..=n).collect(),
        }
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylType::A(k) => write!(f, "A:{k}"),
            WeylType::BC(n) => write!(f, "BC:{n}"),
            WeylType::D(n) => write!(f, "D:{n}"),
            WeylType::U1SU(n) => write!(f, "U1SU:{n}"),
        }
    }
}

impl FromStr for WeylType {
    type Err = PoincareError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PoincareError::Parse(s.to_string());
        let (name, rank) = s.trim().split_once(':').ok_or_else(err)?;
        let n: usize = rank.trim().parse().map_err(|_| err())?;
        let t = match name.trim().to_ascii_uppercase().as_str() {
            "A" => WeylType::A(n),
            "BC" | "B" | "C" => WeylType::BC(n),
            "D" => WeylType::D(n),
            "U1SU" => WeylType::U1SU(n),
            _ => return Err(err()),
        };
        let ok = match t {
            WeylType::A(_) => true,
            WeylType::D(n) => n >= 2,
            WeylType::BC(n) | WeylType::U1SU(n) => n >= 1,
        };
        if ok {
            Ok(t)
        } else {
            Err(PoincareError::OutOfRange(format!("{s} has no degree table")))
        }
    }
}

/// Product of irreducible types, written `BC:2*A:1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylDegrees {
    pub factors: Vec<WeylType>,
}

impl WeylDegrees {
    pub fn single(t: WeylType) -> Self {
        WeylDegrees { factors: vec![t] }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().flat_map(WeylType::degrees).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for WeylDegrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

impl FromStr for WeylDegrees {
    type Err = PoincareError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s.split('*').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Ok(WeylDegrees { factors })
    }
}

/// `Π(1 − t^{2s}) / Π(1 − t^{2r})` over the degrees of `g` and `u`.
pub fn hirsch(g: &WeylDegrees, u: &WeylDegrees) -> Result<UniPoly, PoincareError> {
    let (s, r) = (g.degrees(), u.degrees());
    if s.len() != r.len() {
        return Err(PoincareError::RankMismatch { g: s.len(), u: r.len() });
    }
    let num = s.iter().fold(UniPoly::one(), |acc, &d| acc.mul(&UniPoly::one_minus(2 * d)));
    let den = r.iter().fold(UniPoly::one(), |acc, &d| acc.mul(&UniPoly::one_minus(2 * d)));
    num.exact_div(&den)
}

/// Spaces with a closed product formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductSpace {
    /// `Sp(n)/U(1)SU(n)`.
    Y(usize),
    /// `SO(2n)/U(1)SU(n)`.
    Z(usize),
}

/// `Y(n) = Π_{i=2}^{n}(1 + t^{2i})`, `Z(n) = Π_{i=2}^{n−1}(1 + t^{2i})`.
pub fn product_form(space: ProductSpace) -> Result<UniPoly, PoincareError> {
    let top = match space {
        ProductSpace::Y(n) if n >= 2 => n,
        ProductSpace::Z(n) if n >= 3 => n - 1,
        _ => return Err(PoincareError::OutOfRange(format!("{space:?}"))),
    };
    Ok((2..=top).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_plus(2 * i))))
}

/// Gaussian binomial `[n choose k]` in `q = t^step`.
pub fn gaussian_binomial(n: usize, k: usize, step: usize) -> Result<UniPoly, PoincareError> {
    if k > n {
        return Err(PoincareError::OutOfRange(format!("k={k} > n={n}")));
    }
    if step == 0 {
        return Err(PoincareError::OutOfRange("step must be positive".into()));
    }
    let num = (0..k).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(step * (n - i))));
    let den = (1..=k).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(step * i)));
    num.exact_div(&den)
}

/// `Π_{i=1}^{p}(1 − t^{q+i})/(1 − t^{i})`, the real Grassmannian of `p`-planes in `ℝ^{p+q}`.
pub fn grassmann_poincare(p: usize, q: usize) -> Result<UniPoly, PoincareError> {
    if p == 0 || q == 0 {
        return Err(PoincareError::OutOfRange(format!("need p, q ≥ 1, got p={p}, q={q}")));
    }
    let num = (1..=p).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(q + i)));
    let den = (1..=p).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(i)));
    num.exact_div(&den)
}

/// `SO(2m+1)/(SO(2k)×SO(2m+1−2k))`:
/// `Π_{i=m−k+1}^{m}(1 − t^{4i}) / (Π_{i=1}^{k−1}(1 − t^{4i})·(1 − t^{2k}))`.
pub fn oriented_grassmann_poincare(m: usize, k: usize) -> Result<UniPoly, PoincareError> {
    if k == 0 || k > m {
        return Err(PoincareError::OutOfRange(format!("need 1 ≤ k ≤ m, got m={m}, k={k}")));
    }
    let num = (m - k + 1..=m).fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(4 * i)));
    let den = (1..k)
        .fold(UniPoly::one(), |acc, i| acc.mul(&UniPoly::one_minus(4 * i)))
        .mul(&UniPoly::one_minus(2 * k));
    num.exact_div(&den)
}

/// `Γ(n,ℂ)/Γ(p,q)`: `(1+t)·grassmann(p,q)` for even `n`, `(1+t)·oriented(m,k)`
/// for `n = 2m+1`, `p = 2k`.
pub fn clifford_gamma_poincare(n: usize, p: usize, q: usize) -> Result<UniPoly, PoincareError> {
    if p + q != n {
        return Err(PoincareError::OutOfRange(format!("p+q={} differs from n={n}", p + q)));
    }
    let circle = UniPoly::one_plus(1);
    if n.is_multiple_of(2) {
        Ok(circle.mul(&grassmann_poincare(p, q)?))
    } else if p.is_multiple_of(2) {
        Ok(circle.mul(&oriented_grassmann_poincare(n / 2, p / 2)?))
    } else {
        Err(PoincareError::BranchUnavailable { n, p, q })
    }
}

/// `[n choose ⌊n/2⌋]` in `t²`, the formula stated for `GL(n,ℍ_s)/GL(n,ℂ_s)`.
pub fn wn_poincare(n: usize) -> Result<UniPoly, PoincareError> {
    if n == 0 {
        return Err(PoincareError::OutOfRange("n must be positive".into()));
    }
    gaussian_binomial(n, n / 2, 2)
}
