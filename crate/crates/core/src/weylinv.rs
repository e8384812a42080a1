//! Laurent polynomials under signed permutation groups: averaging, invariants,
//! generators, and index counts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::budget::Budget;
use crate::exactfields::{BaseField, Elem};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("variable count mismatch: {0} against {1}")]
    DimensionMismatch(usize, usize),
    #[error("computation exceeds the budget: {0}")]
    BudgetExceeded(String),
    #[error("unsupported group flavor: {0}")]
    Unsupported(String),
    #[error("order {h} does not divide {g}")]
    NotDividing { g: BigInt, h: BigInt },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Exponent = Vec<i64>;

/// Laurent polynomial in `x1, …, xn` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        LaurentPoly::monomial(n, vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        LaurentPoly::constant(n, BigRational::one())
    }

    pub fn monomial(n: usize, exp: Exponent, c: BigRational) -> Self {
        assert_eq!(exp.len(), n, "exponent length");
        let mut p = LaurentPoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        LaurentPoly::monomial(n, e, BigRational::one())
    }

    /// `x_{i+1}^{-1}`.
    pub fn inv_var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = -1;
        LaurentPoly::monomial(n, e, BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, other: &LaurentPoly) -> Result<(), WeylError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(WeylError::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
        self.try_add(&other.scale(&-BigRational::one()))
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
        self.check(other)?;
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(LaurentPoly { n: self.n, terms: acc })
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(self.n), |acc, _| acc.try_mul(self).expect("same n"))
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Largest `|exponent|` over all terms and variables.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Parses `"x1^2*x2^-1 + 3/2*x3 - 1"`; `n` defaults to the largest index used.
    pub fn parse(s: &str, n: Option<usize>) -> Result<LaurentPoly, WeylError> {
        let err = |m: &str| WeylError::Parse(format!("{m} in {s:?}"));
        let mut raw: Vec<(BigRational, BTreeMap<usize, i64>)> = Vec::new();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty input"));
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && prev.is_some() {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));
        let mut top = 0;
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(err("empty term"));
            }
            let mut c = BigRational::one();
            let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
            for factor in chunk.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                    if idx == 0 {
                        return Err(err("variables start at x1"));
                    }
                    top = top.max(idx);
                    *exps.entry(idx - 1).or_insert(0) += e;
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
                    c *= v;
                }
            }
            raw.push((if neg { -c } else { c }, exps));
        }
        let n = match n {
            Some(n) if n < top => return Err(WeylError::DimensionMismatch(top, n)),
            Some(n) => n,
            None => top,
        };
        let mut out = LaurentPoly::zero(n);
        for (c, exps) in raw {
            let mut e = vec![0; n];
            for (i, v) in exps {
                e[i] = v;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Higher exponents first, constant last.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| if v == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, v) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `x_i ↦ x_{perm[i]}^{signs[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = SignedPerm::identity(n);
        g.perm.swap(i, j);
        g
    }

    pub fn flip(n: usize, idx: &[usize]) -> Self {
        let mut g = SignedPerm::identity(n);
        for &i in idx {
            g.signs[i] = -1;
        }
        g
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// `self ∘ other`: acting by `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| self.signs[j] * s)
            .collect();
        SignedPerm { perm, signs }
    }

    pub fn act_exponent(&self, e: &[i64]) -> Exponent {
        let mut out = vec![0; e.len()];
        for (i, &v) in e.iter().enumerate() {
            out[self.perm[i]] = self.signs[i] as i64 * v;
        }
        out
    }

    /// Same element acting on variables `offset..offset+len` of `n`.
    fn embed(&self, offset: usize, n: usize) -> SignedPerm {
        let mut g = SignedPerm::identity(n);
        for i in 0..self.len() {
            g.perm[offset + i] = offset + self.perm[i];
            g.signs[offset + i] = self.signs[i];
        }
        g
    }
}

/// Variable substitution `g·f`.
pub fn act(g: &SignedPerm, f: &LaurentPoly) -> Result<LaurentPoly, WeylError> {
    if g.len() != f.n {
        return Err(WeylError::DimensionMismatch(g.len(), f.n));
    }
    let mut out = LaurentPoly::zero(f.n);
    for (e, c) in &f.terms {
        out.add_term(g.act_exponent(e), c.clone());
    }
    Ok(out)
}

/// Signed permutation groups acting on Laurent monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedPermGroup {
    /// Symmetric group (type A).
    Sym(usize),
    /// All signed permutations (type BC).
    Hyperoctahedral(usize),
    /// Signed permutations with an even number of sign changes (type D).
    EvenSigned(usize),
    /// The trivial group on `n` variables.
    Trivial(usize),
    /// Pure sign changes `(ℤ/2)ⁿ`.
    Signs(usize),
    /// Direct product acting on consecutive blocks of variables.
    Product(Vec<SignedPermGroup>),
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

impl SignedPermGroup {
    pub fn nvars(&self) -> usize {
        match self {
            SignedPermGroup::Sym(n)
            | SignedPermGroup::Hyperoctahedral(n)
            | SignedPermGroup::EvenSigned(n)
            | SignedPermGroup::Trivial(n)
            | SignedPermGroup::Signs(n) => *n,
            SignedPermGroup::Product(fs) => fs.iter().map(SignedPermGroup::nvars).sum(),
        }
    }

    pub fn order(&self) -> BigInt {
        let two = BigInt::from(2);
        match self {
            SignedPermGroup::Sym(n) => factorial(*n),
            SignedPermGroup::Hyperoctahedral(n) => factorial(*n) * two.pow(*n as u32),
            SignedPermGroup::EvenSigned(0) => BigInt::one(),
            SignedPermGroup::EvenSigned(n) => factorial(*n) * two.pow(*n as u32 - 1),
            SignedPermGroup::Trivial(_) => BigInt::one(),
            SignedPermGroup::Signs(n) => two.pow(*n as u32),
            SignedPermGroup::Product(fs) => fs.iter().map(SignedPermGroup::order).product(),
        }
    }

    pub fn generators(&self) -> Vec<SignedPerm> {
        let n = self.nvars();
        let adj = |n: usize| (0..n.saturating_sub(1)).map(move |i| SignedPerm::transposition(n, i, i + 1));
        match self {
            SignedPermGroup::Sym(n) => adj(*n).collect(),
            SignedPermGroup::Hyperoctahedral(n) => {
                let mut g: Vec<_> = adj(*n).collect();
                if *n > 0 {
                    g.push(SignedPerm::flip(*n, &[0]));
                }
                g
            }
            SignedPermGroup::EvenSigned(n) => {
                let mut g: Vec<_> = adj(*n).collect();
                if *n > 1 {
                    g.push(SignedPerm::flip(*n, &[0, 1]));
                }
                g
            }
            SignedPermGroup::Trivial(_) => Vec::new(),
            SignedPermGroup::Signs(n) => (0..*n).map(|i| SignedPerm::flip(*n, &[i])).collect(),
            SignedPermGroup::Product(fs) => {
                let mut out = Vec::new();
                let mut offset = 0;
                for f in fs {
                    out.extend(f.generators().iter().map(|g| g.embed(offset, n)));
                    offset += f.nvars();
                }
                out
            }
        }
    }

    /// Whether `g` belongs to the group.
    pub fn contains(&self, g: &SignedPerm) -> bool {
        if g.len() != self.nvars() {
            return false;
        }
        let n = g.len();
        let no_signs = g.signs.iter().all(|&s| s == 1);
        let is_identity_perm = g.perm.iter().enumerate().all(|(i, &p)| i == p);
        match self {
            SignedPermGroup::Sym(_) => no_signs,
            SignedPermGroup::Hyperoctahedral(_) => true,
            SignedPermGroup::EvenSigned(_) => g.signs.iter().filter(|&&s| s == -1).count() % 2 == 0,
            SignedPermGroup::Trivial(_) => no_signs && is_identity_perm,
            SignedPermGroup::Signs(_) => is_identity_perm,
            SignedPermGroup::Product(fs) => {
                let mut offset = 0;
                for f in fs {
                    let k = f.nvars();
                    let block = offset..offset + k;
                    if g.perm[block.clone()].iter().any(|p| !block.contains(p)) {
                        return false;
                    }
                    let local = SignedPerm {
                        perm: g.perm[block.clone()].iter().map(|p| p - offset).collect(),
                        signs: g.signs[block].to_vec(),
                    };
                    if !f.contains(&local) {
                        return false;
                    }
                    offset += k;
                }
                offset == n
            }
        }
    }

    /// All elements, by closure under the generators.
    pub fn elements(&self, budget: Budget) -> Result<Vec<SignedPerm>, WeylError> {
        let cap = budget.item_cap(self.nvars().max(1) as u64 * 50);
        if self.order() > BigInt::from(cap) {
            return Err(WeylError::BudgetExceeded(format!("group of order {}", self.order())));
        }
        let gens = self.generators();
        let id = SignedPerm::identity(self.nvars());
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Orbit of an exponent vector under the group.
    pub fn orbit(&self, e: &[i64], cap: u128) -> Result<BTreeSet<Exponent>, WeylError> {
        let gens = self.generators();
        let mut seen = BTreeSet::from([e.to_vec()]);
        let mut queue = VecDeque::from([e.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.act_exponent(&x);
                if seen.insert(y.clone()) {
                    if seen.len() as u128 > cap {
                        return Err(WeylError::BudgetExceeded(format!("orbit larger than {cap}")));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }

    pub fn is_invariant(&self, f: &LaurentPoly) -> Result<bool, WeylError> {
        for g in self.generators() {
            if act(&g, f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SignedPermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedPermGroup::Sym(n) => write!(f, "S{n}"),
            SignedPermGroup::Hyperoctahedral(n) => write!(f, "W{n}"),
            SignedPermGroup::EvenSigned(n) => write!(f, "D{n}"),
            SignedPermGroup::Trivial(n) => write!(f, "1[{n}]"),
            SignedPermGroup::Signs(n) => write!(f, "Z2^{n}"),
            SignedPermGroup::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// `A:2`, `BC:3`, `D:3`, `Trivial:2`, `Signs:2`, and products like `A:1*A:1`.
impl std::str::FromStr for SignedPermGroup {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let one = |t: &str| -> Result<SignedPermGroup, WeylError> {
            let err = || WeylError::Parse(format!("bad group {t:?}"));
            let (name, n) = t.trim().split_once(':').ok_or_else(err)?;
            let n: usize = n.trim().parse().map_err(|_| err())?;
            Ok(match name.trim().to_ascii_uppercase().as_str() {
                "A" | "S" | "SYM" => SignedPermGroup::Sym(n),
                "BC" | "B" | "C" | "W" => SignedPermGroup::Hyperoctahedral(n),
                "D" => SignedPermGroup::EvenSigned(n),
                "TRIVIAL" => SignedPermGroup::Trivial(n),
                "SIGNS" => SignedPermGroup::Signs(n),
                _ => return Err(err()),
            })
        };
        let mut fs = s.split('*').map(one).collect::<Result<Vec<_>, _>>()?;
        Ok(if fs.len() == 1 { fs.remove(0) } else { SignedPermGroup::Product(fs) })
    }
}

/// `(1/|G|) Σ_g g·f`, computed term by term as orbit averages.
pub fn reynolds(group: &SignedPermGroup, f: &LaurentPoly, budget: Budget) -> Result<LaurentPoly, WeylError> {
    if group.nvars() != f.n {
        return Err(WeylError::DimensionMismatch(group.nvars(), f.n));
    }
    let cap = budget.item_cap(f.n.max(1) as u64 * 100);
    let mut out = LaurentPoly::zero(f.n);
    for (e, c) in &f.terms {
        let orbit = group.orbit(e, cap)?;
        let share = c / BigRational::from_integer(BigInt::from(orbit.len()));
        for x in orbit {
            out.add_term(x, share.clone());
        }
    }
    Ok(out)
}

/// Flavors with polynomial generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFlavor {
    Sym,
    Hyperoctahedral,
}

impl GenFlavor {
    pub fn group(&self, n: usize) -> SignedPermGroup {
        match self {
            GenFlavor::Sym => SignedPermGroup::Sym(n),
            GenFlavor::Hyperoctahedral => SignedPermGroup::Hyperoctahedral(n),
        }
    }
}

fn elementary(vals: &[LaurentPoly], n: usize) -> Vec<LaurentPoly> {
    // e[k] of the first j values, built up one value at a time.
    let mut e = vec![LaurentPoly::one(n)];
    e.extend((0..vals.len()).map(|_| LaurentPoly::zero(n)));
    for v in vals {
        for k in (1..e.len()).rev() {
            let t = e[k - 1].try_mul(v).expect("same n");
            e[k] = e[k].try_add(&t).expect("same n");
        }
    }
    e.remove(0);
    e
}

/// `e₁,…,eₙ` in the variables (`Sym`) or in `xᵢ + xᵢ⁻¹` (`Hyperoctahedral`).
pub fn fundamental_generators(flavor: GenFlavor, n: usize) -> Vec<LaurentPoly> {
    let vals: Vec<LaurentPoly> = match flavor {
        GenFlavor::Sym => (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
        GenFlavor::Hyperoctahedral => (0..n)
            .map(|i| LaurentPoly::var(n, i).try_add(&LaurentPoly::inv_var(n, i)).expect("same n"))
            .collect(),
    };
    elementary(&vals, n)
}

/// Flavor with generators, for groups given by value.
pub fn gen_flavor(group: &SignedPermGroup) -> Result<(GenFlavor, usize), WeylError> {
    match group {
        SignedPermGroup::Sym(n) => Ok((GenFlavor::Sym, *n)),
        SignedPermGroup::Hyperoctahedral(n) => Ok((GenFlavor::Hyperoctahedral, *n)),
        other => Err(WeylError::Unsupported(other.to_string())),
    }
}

/// `|G| / |H|`.
pub fn weyl_index(g: &SignedPermGroup, h: &SignedPermGroup) -> Result<BigInt, WeylError> {
    let (og, oh) = (g.order(), h.order());
    let (q, r) = og.div_rem(&oh);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(WeylError::NotDividing { g: og, h: oh })
    }
}

/// Pairs whose K-theory is free over `K_*(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPair {
    /// `GL(n,ℍ_s)`-type pair, index of `S_n` in `S_{2n}`.
    Quaternionic(usize),
    /// `GL(2n)/GL(n)×GL(n)`-type pair, index of `S_n×S_n` in `S_{2n}`.
    Split(usize),
    /// The one-dimensional split case.
    OneDimSplit,
}

/// Rank of the free ℤ-module multiplying `K_*(k)`.
pub fn ktheory_rank(pair: KPair) -> Result<BigInt, WeylError> {
    match pair {
        KPair::Quaternionic(0) | KPair::Split(0) => Err(WeylError::OutOfRange("n must be positive".into())),
        KPair::Quaternionic(n) => weyl_index(&SignedPermGroup::Sym(2 * n), &SignedPermGroup::Sym(n)),
        KPair::Split(n) => weyl_index(
            &SignedPermGroup::Sym(2 * n),
            &SignedPermGroup::Product(vec![SignedPermGroup::Sym(n), SignedPermGroup::Sym(n)]),
        ),
        KPair::OneDimSplit => weyl_index(
            &SignedPermGroup::Sym(2),
            &SignedPermGroup::Product(vec![SignedPermGroup::Sym(1), SignedPermGroup::Sym(1)]),
        ),
    }
}

/// Outcome of an expressibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expressibility {
    /// Coefficients on the listed generator exponent vectors.
    Expressible(Vec<(Vec<i64>, BigRational)>),
    /// Not in the span of the admissible products; says nothing beyond the bound.
    Inconclusive,
}

impl Expressibility {
    pub fn label(&self) -> &'static str {
        match self {
            Expressibility::Expressible(_) => "expressible",
            Expressibility::Inconclusive => "inconclusive at this bound",
        }
    }
}

/// Exponent vectors `k` with `Σ |kᵢ|·i ≤ bound`; only the last entry may be
/// negative, and only for `Sym` (where `eₙ` is a unit).
fn generator_exponents(flavor: GenFlavor, n: usize, bound: usize) -> Vec<Vec<i64>> {
    fn rec(i: usize, n: usize, left: usize, neg_last: bool, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let w = i + 1;
        let max = (left / w) as i64;
        let low = if neg_last && i == n - 1 { -max } else { 0 };
        for k in low..=max {
            cur.push(k);
            rec(i + 1, n, left - k.unsigned_abs() as usize * w, neg_last, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, bound, flavor == GenFlavor::Sym, &mut Vec::new(), &mut out);
    out
}

fn generator_product(gens: &[LaurentPoly], last_inv: &LaurentPoly, k: &[i64]) -> LaurentPoly {
    let n = last_inv.nvars();
    let mut acc = LaurentPoly::one(n);
    for (i, &ki) in k.iter().enumerate() {
        let base = if ki < 0 { last_inv } else { &gens[i] };
        acc = acc.try_mul(&base.pow(ki.unsigned_abs() as u32)).expect("same n");
    }
    acc
}

fn rat_elem(c: &BigRational) -> Elem {
    Elem::Rat(c.clone())
}

fn span_solve(columns: &[LaurentPoly], target: &LaurentPoly) -> Option<Vec<BigRational>> {
    let mut monos: BTreeSet<Exponent> = target.terms.keys().cloned().collect();
    for c in columns {
        monos.extend(c.terms.keys().cloned());
    }
    let rows: Vec<Vec<Elem>> = monos
        .iter()
        .map(|m| columns.iter().map(|c| rat_elem(&c.coeff(m))).collect())
        .collect();
    let rhs: Vec<Elem> = monos.iter().map(|m| rat_elem(&target.coeff(m))).collect();
    let zero = BaseField::Rationals.zero();
    let x = linalg::solve(&rows, &rhs, &zero).expect("rational elimination")?;
    Some(x.into_iter().map(|e| e.as_rational().expect("rational").clone()).collect())
}

/// Whether `f` is a combination of generator products of weight at most `bound`.
pub fn check_expressible(
    flavor: GenFlavor,
    f: &LaurentPoly,
    bound: usize,
    budget: Budget,
) -> Result<Expressibility, WeylError> {
    let n = f.nvars();
    if n == 0 {
        return Err(WeylError::OutOfRange("no variables".into()));
    }
    let exps = generator_exponents(flavor, n, bound);
    if !budget.admits((exps.len() as u128).pow(2) * 1000) {
        return Err(WeylError::BudgetExceeded(format!("{} generator products", exps.len())));
    }
    let gens = fundamental_generators(flavor, n);
    let last_inv = LaurentPoly::monomial(n, vec![-1; n], BigRational::one());
    let cols: Vec<LaurentPoly> = exps.iter().map(|k| generator_product(&gens, &last_inv, k)).collect();
    Ok(match span_solve(&cols, f) {
        Some(x) => Expressibility::Expressible(
            exps.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect(),
        ),
        None => Expressibility::Inconclusive,
    })
}

/// Per-invariant result of [`verify_generation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub flavor: GenFlavor,
    pub n: usize,
    pub degree_bound: usize,
    pub checked: usize,
    pub expressible: usize,
    /// Orbit sums not reached within the bound.
    pub inconclusive: Vec<LaurentPoly>,
}

/// Orbit sums of monomials with entries in `[-bound, bound]`, each tested
/// against products of the fundamental generators of weight at most `bound`.
pub fn verify_generation(
    flavor: GenFlavor,
    n: usize,
    degree_bound: usize,
    budget: Budget,
) -> Result<GenerationReport, WeylError> {
    if n == 0 || n > 3 || degree_bound > 6 {
        return Err(WeylError::BudgetExceeded(format!(
            "n={n}, bound={degree_bound} (limits: 1 ≤ n ≤ 3, bound ≤ 6)"
        )));
    }
    let group = flavor.group(n);
    let b = degree_bound as i64;
    let side = (2 * b + 1) as usize;
    let mut reps: BTreeSet<Exponent> = BTreeSet::new();
    let mut covered: BTreeSet<Exponent> = BTreeSet::new();
    for idx in 0..side.pow(n as u32) {
        let mut e = Vec::with_capacity(n);
        let mut r = idx;
        for _ in 0..n {
            e.push((r % side) as i64 - b);
            r /= side;
        }
        if covered.contains(&e) {
            continue;
        }
        let orbit = group.orbit(&e, u128::MAX)?;
        covered.extend(orbit.iter().cloned());
        reps.insert(e);
    }
    let exps = generator_exponents(flavor, n, degree_bound);
    let gens = fundamental_generators(flavor, n);
    let last_inv = LaurentPoly::monomial(n, vec![-1; n], BigRational::one());
    let cols: Vec<LaurentPoly> = exps.iter().map(|k| generator_product(&gens, &last_inv, k)).collect();
    if !budget.admits(reps.len() as u128 * (cols.len() as u128 + 1).pow(2) * 200) {
        return Err(WeylError::BudgetExceeded(format!("{} orbit sums", reps.len())));
    }
    let mut report = GenerationReport {
        flavor,
        n,
        degree_bound,
        checked: 0,
        expressible: 0,
        inconclusive: Vec::new(),
    };
    for e in reps {
        let mut f = LaurentPoly::zero(n);
        for x in group.orbit(&e, u128::MAX)? {
            f.add_term(x, BigRational::one());
        }
        report.checked += 1;
        match span_solve(&cols, &f) {
            Some(_) => report.expressible += 1,
            None => report.inconclusive.push(f),
        }
    }
    Ok(report)
}

/// Binomial coefficient, for cross-checks.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = lp("x1^2*x2^-1 + 3", 2);
        assert_eq!(f.coeff(&[2, -1]), BigRational::one());
        assert_eq!(f.coeff(&[0, 0]), BigRational::from_integer(3.into()));
        assert_eq!(LaurentPoly::parse(&f.to_string(), Some(2)).unwrap(), f);
        let g = lp("-1/2*x1 - x2^-3 + x1", 2);
        assert_eq!(g, lp("1/2*x1 - x2^-3", 2));
        assert!(LaurentPoly::parse("x0", None).is_err());
        assert!(LaurentPoly::parse("x3", Some(2)).is_err());
        assert_eq!(lp("x1 - x1", 1).to_string(), "0");
    }

    #[test]
    fn action_basics() {
        let t = SignedPerm::transposition(2, 0, 1);
        assert_eq!(act(&t, &lp("x1", 2)).unwrap(), lp("x2", 2));
        let s = SignedPerm::flip(1, &[0]);
        assert_eq!(act(&s, &lp("x1", 1)).unwrap(), lp("x1^-1", 1));
        assert!(act(&s, &lp("x1", 2)).is_err());
    }

    #[test]
    fn composition_is_an_action() {
        let g = SignedPerm {
            perm: vec![1, 2, 0],
            signs: vec![1, -1, 1],
        };
        let h = SignedPerm {
            perm: vec![2, 0, 1],
            signs: vec![-1, -1, 1],
        };
        let f = lp("x1^2*x2 + 3*x3^-1*x1 - x2", 3);
        assert_eq!(act(&g.compose(&h), &f).unwrap(), act(&g, &act(&h, &f).unwrap()).unwrap());
    }

    #[test]
    fn orders_match_closure() {
        let groups = [
            SignedPermGroup::Sym(4),
            SignedPermGroup::Hyperoctahedral(3),
            SignedPermGroup::EvenSigned(3),
            SignedPermGroup::Trivial(2),
            SignedPermGroup::Signs(3),
            SignedPermGroup::Product(vec![SignedPermGroup::Sym(2), SignedPermGroup::Hyperoctahedral(2)]),
        ];
        for g in groups {
            let els = g.elements(Budget::default()).unwrap();
            assert_eq!(BigInt::from(els.len()), g.order(), "{g}");
            assert!(els.iter().all(|x| g.contains(x)));
        }
    }

    #[test]
    fn reynolds_examples() {
        let half = BigRational::new(1.into(), 2.into());
        let r = reynolds(&SignedPermGroup::Sym(2), &lp("x1", 2), Budget::default()).unwrap();
        assert_eq!(r, lp("x1 + x2", 2).scale(&half));
        let r = reynolds(&SignedPermGroup::Hyperoctahedral(1), &lp("x1", 1), Budget::default()).unwrap();
        assert_eq!(r, lp("x1 + x1^-1", 1).scale(&half));
        let inv = lp("x1*x2 + 5", 2);
        assert_eq!(reynolds(&SignedPermGroup::Sym(2), &inv, Budget::default()).unwrap(), inv);
    }

    #[test]
    fn generators_are_invariant() {
        assert_eq!(fundamental_generators(GenFlavor::Sym, 2), vec![lp("x1 + x2", 2), lp("x1*x2", 2)]);
        assert_eq!(fundamental_generators(GenFlavor::Hyperoctahedral, 1), vec![lp("x1 + x1^-1", 1)]);
        for n in 1..4 {
            for fl in [GenFlavor::Sym, GenFlavor::Hyperoctahedral] {
                for g in fundamental_generators(fl, n) {
                    assert!(fl.group(n).is_invariant(&g).unwrap());
                }
            }
        }
    }

    #[test]
    fn indices() {
        let s = SignedPermGroup::Sym;
        assert_eq!(weyl_index(&s(4), &SignedPermGroup::Product(vec![s(2), s(2)])).unwrap(), 6.into());
        assert_eq!(weyl_index(&s(4), &s(2)).unwrap(), 12.into());
        assert_eq!(weyl_index(&s(4), &s(4)).unwrap(), 1.into());
        assert!(matches!(
            weyl_index(&s(3), &SignedPermGroup::Signs(2)),
            Err(WeylError::NotDividing { .. })
        ));
        assert_eq!(ktheory_rank(KPair::OneDimSplit).unwrap(), 2.into());
        assert_eq!(ktheory_rank(KPair::Quaternionic(1)).unwrap(), 2.into());
        assert_eq!(ktheory_rank(KPair::Split(2)).unwrap(), 6.into());
        assert!(ktheory_rank(KPair::Split(0)).is_err());
    }

    #[test]
    fn expressibility() {
        let b = Budget::default();
        assert!(matches!(
            check_expressible(GenFlavor::Sym, &lp("x1 + x2", 2), 2, b).unwrap(),
            Expressibility::Expressible(_)
        ));
        assert!(matches!(
            check_expressible(GenFlavor::Hyperoctahedral, &lp("x1^3 + x1^-3", 1), 3, b).unwrap(),
            Expressibility::Expressible(_)
        ));
        assert_eq!(
            check_expressible(GenFlavor::Sym, &lp("x1*x2 + x1^-1*x2^-1", 2), 1, b).unwrap(),
            Expressibility::Inconclusive
        );
        assert!(matches!(
            check_expressible(GenFlavor::Sym, &lp("x1*x2 + x1^-1*x2^-1", 2), 2, b).unwrap(),
            Expressibility::Expressible(_)
        ));
    }

    #[test]
    fn generation_small() {
        let r = verify_generation(GenFlavor::Hyperoctahedral, 1, 4, Budget::default()).unwrap();
        assert_eq!((r.checked, r.expressible), (5, 5));
        let r = verify_generation(GenFlavor::Sym, 2, 2, Budget::default()).unwrap();
        assert!(r.expressible >= 1 && r.checked == r.expressible + r.inconclusive.len());
        assert!(verify_generation(GenFlavor::Sym, 4, 2, Budget::default()).is_err());
    }
}
