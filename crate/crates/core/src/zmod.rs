//! Integer matrices, Smith normal form, and short exact sequences of free
//! abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZmodError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("s_max = {s_max} is below 2n-1 = {need}")]
    TruncationTooSmall { s_max: usize, need: usize },
    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, ZmodError> {
        if entries.len() != rows * cols {
            return Err(ZmodError::ShapeMismatch(format!("{} entries for {rows}x{cols}", entries.len())));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ZmodError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ZmodError::ShapeMismatch("ragged rows".into()));
        }
        IntMatrix::new(rows.len(), cols, rows.iter().flatten().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, ZmodError> {
        if self.cols != other.rows {
            return Err(ZmodError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt, ZmodError> {
        if self.rows != self.cols {
            return Err(ZmodError::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c·row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += c·col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.row_vecs() {
            let s: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smallest nonzero `|a_ij|` with `i, j ≥ t`, first in row-major order.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                let (q, _) = d.get(i, t).div_mod_floor(d.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    d.add_row(i, t, &nq);
                    u.add_row(i, t, &nq);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let (q, _) = d.get(t, j).div_mod_floor(d.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    d.add_col(j, t, &nq);
                    v.add_col(j, t, &nq);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest; otherwise fold an offending row in.
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> Smith {
    for i in 0..d.rows.min(d.cols) {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    Smith { u, d, v }
}

/// Whether `f·x = y` has an integer solution.
pub fn in_image(f: &IntMatrix, snf: &Smith, y: &[BigInt]) -> bool {
    let uy = snf.u.mul_vec(y);
    let r = snf.rank();
    uy.iter().enumerate().all(|(i, c)| {
        if i < r {
            c.is_multiple_of(snf.d.get(i, i))
        } else {
            c.is_zero()
        }
    }) && f.rows == y.len()
}

/// Basis of `ker A` over ℤ: the last columns of `V`.
pub fn kernel_basis(snf: &Smith) -> Vec<Vec<BigInt>> {
    (snf.rank()..snf.v.cols).map(|j| snf.v.column(j)).collect()
}

/// Properties of `0 → ℤ^k --f--> ℤ^m --g--> ℤ^c → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceReport {
    pub injective_f: bool,
    pub composite_zero: bool,
    pub exact_middle: bool,
    pub surjective_g: bool,
    /// The cokernel of `f` is torsion-free.
    pub splits: bool,
}

impl SequenceReport {
    pub fn all(&self) -> bool {
        self.injective_f && self.composite_zero && self.exact_middle && self.surjective_g && self.splits
    }
}

pub fn sequence_checks(f: &IntMatrix, g: &IntMatrix) -> Result<SequenceReport, ZmodError> {
    if g.cols != f.rows {
        return Err(ZmodError::ShapeMismatch(format!(
            "g is {}x{} but f is {}x{}",
            g.rows, g.cols, f.rows, f.cols
        )));
    }
    let sf = smith_normal_form(f);
    let sg = smith_normal_form(g);
    let injective_f = sf.rank() == f.cols;
    let composite_zero = g.mul(f)?.is_zero();
    let exact_middle = composite_zero && kernel_basis(&sg).iter().all(|k| in_image(f, &sf, k));
    let surjective_g = sg.rank() == g.rows && sg.invariant_factors().iter().all(One::is_one);
    let splits = sf.invariant_factors().iter().all(One::is_one);
    Ok(SequenceReport {
        injective_f,
        composite_zero,
        exact_middle,
        surjective_g,
        splits,
    })
}

/// Truncated model of the split sequence `0 → ℤ^{2n−1} → Λ → Λ/δ → 0`,
/// where `Λ = ⊕_{0<|s|≤s_max} ℤ·t^s` and `δ([ρᵢ]) = t^{εᵢ·i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationModel {
    pub n: usize,
    pub s_max: usize,
    pub signs: Vec<i8>,
    pub delta: IntMatrix,
    /// Projection of `Λ` onto the characters outside the image of `δ`.
    pub quotient: IntMatrix,
    pub checks: SequenceReport,
    pub middle_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

/// Position of `t^s` in the lattice basis `t¹, t⁻¹, t², t⁻², …`.
pub fn character_index(s: i64) -> usize {
    let k = s.unsigned_abs() as usize;
    2 * (k - 1) + usize::from(s < 0)
}

/// Character exponent at a basis position.
pub fn character_at(idx: usize) -> i64 {
    let k = (idx / 2 + 1) as i64;
    if idx.is_multiple_of(2) {
        k
    } else {
        -k
    }
}

/// Parses `"++-+"` into signs.
pub fn parse_signs(s: &str) -> Result<Vec<i8>, ZmodError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(ZmodError::InvalidParameters(format!("sign {c:?} is not + or -"))),
        })
        .collect()
}

pub fn build_localization_model(n: usize, s_max: usize, signs: &[i8]) -> Result<LocalizationModel, ZmodError> {
    if n == 0 {
        return Err(ZmodError::InvalidParameters("n must be positive".into()));
    }
    let k = 2 * n - 1;
    if signs.len() != k {
        return Err(ZmodError::InvalidParameters(format!(
            "expected {k} signs, got {}",
            signs.len()
        )));
    }
    if s_max < k {
        return Err(ZmodError::TruncationTooSmall { s_max, need: k });
    }
    if signs.iter().any(|&e| e != 1 && e != -1) {
        return Err(ZmodError::InvalidParameters("signs must be ±1".into()));
    }
    let lattice = 2 * s_max;
    let mut delta = IntMatrix::zero(lattice, k);
    let mut hit = vec![false; lattice];
    for (i, &e) in signs.iter().enumerate() {
        let idx = character_index(e as i64 * (i as i64 + 1));
        delta.set(idx, i, BigInt::one());
        hit[idx] = true;
    }
    let rest: Vec<usize> = (0..lattice).filter(|&j| !hit[j]).collect();
    let mut quotient = IntMatrix::zero(rest.len(), lattice);
    for (r, &j) in rest.iter().enumerate() {
        quotient.set(r, j, BigInt::one());
    }
    let checks = sequence_checks(&delta, &quotient)?;
    let invariant_factors = smith_normal_form(&delta).invariant_factors();
    Ok(LocalizationModel {
        n,
        s_max,
        signs: signs.to_vec(),
        delta,
        quotient,
        checks,
        middle_rank: lattice,
        invariant_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
        assert_eq!(check_snf(&m(&[&[2, 0], &[0, 3]])).d, m(&[&[1, 0], &[0, 6]]));
        assert!(check_snf(&IntMatrix::zero(2, 3)).d.is_zero());
        let s = check_snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check_snf(&m(&[&[0, 0, 5], &[3, 0, 0]]));
    }

    #[test]
    fn bareiss() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det().unwrap(), BigInt::from(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det().unwrap(), BigInt::from(6));
        assert!(m(&[&[1, 2]]).det().is_err());
    }

    #[test]
    fn sequences() {
        let r = sequence_checks(&m(&[&[2]]), &IntMatrix::zero(0, 1)).unwrap();
        assert!(!r.splits);
        let f = m(&[&[1], &[0]]);
        let g = m(&[&[0, 1]]);
        assert!(sequence_checks(&f, &g).unwrap().all());
        assert!(!sequence_checks(&f, &m(&[&[1, 1]])).unwrap().composite_zero);
        assert!(sequence_checks(&f, &m(&[&[1]])).is_err());
    }

    #[test]
    fn characters() {
        for idx in 0..10 {
            assert_eq!(character_index(character_at(idx)), idx);
        }
        assert_eq!(parse_signs("+-").unwrap(), vec![1, -1]);
        assert!(parse_signs("+x").is_err());
    }

    #[test]
    fn localization() {
        let l = build_localization_model(1, 1, &[1]).unwrap();
        assert_eq!(l.delta, m(&[&[1], &[0]]));
        assert_eq!(l.middle_rank, 2);
        assert!(l.checks.all());
        let a = build_localization_model(2, 3, &[1, 1, 1]).unwrap();
        let b = build_localization_model(2, 3, &[1, -1, -1]).unwrap();
        assert!(a.checks.all() && b.checks.all());
        assert_eq!(a.invariant_factors, b.invariant_factors);
        assert_eq!(
            build_localization_model(2, 2, &[1, 1, 1]),
            Err(ZmodError::TruncationTooSmall { s_max: 2, need: 3 })
        );
        assert!(build_localization_model(2, 5, &[1, 1, -1, 1]).is_err());
    }
}
