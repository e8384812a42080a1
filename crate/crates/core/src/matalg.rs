//! Matrices over fields and over quaternion algebras.
//!
//! Matrices over a quaternion algebra form a right module: scalars act on the
//! right of every entry. No left action is exposed.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfields::{tau, BaseField, Elem, FieldError, FieldSpec, Scalar};
use crate::linalg::{self, NonUnitPivot};
use crate::quatalg::{QuatAlgebra, QuatError, QuatKind, Quaternion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entries belong to different algebras or fields")]
    AlgebraMismatch,
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("algebra has no registered Mat(2,k) realization")]
    NotSplitForm,
    #[error("entry ({0},{1}) is not a diagonal 2x2 block")]
    NotDiagonalBlock(usize, usize),
    #[error("nonzero non-unit met during elimination at ({row},{col}); the algebra is split")]
    UnexpectedZeroDivisor { row: usize, col: usize },
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense row-major matrix over a field or a quadratic algebra `k[√a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl FieldMatrix {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, MatError> {
        if entries.len() != rows * cols {
            return Err(MatError::DimensionMismatch(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.spec() != spec) {
            return Err(MatError::AlgebraMismatch);
        }
        Ok(FieldMatrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    /// Matrix over a base field from its elements.
    pub fn from_elems(base: BaseField, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self, MatError> {
        FieldMatrix::new(
            FieldSpec::Base(base),
            rows,
            cols,
            entries.into_iter().map(Scalar::Base).collect(),
        )
    }

    pub fn from_i64(base: BaseField, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| base.from_i64(v))).collect();
        FieldMatrix::from_elems(base, r, c, entries).expect("rectangular input")
    }

    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            entries: vec![spec.zero(); rows * cols],
            spec,
            rows,
            cols,
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = FieldMatrix::zero(spec.clone(), n, n);
        for i in 0..n {
            m.entries[i * n + i] = spec.one();
        }
        m
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols.max(1)).map(|r| r.to_vec()).take(self.rows).collect()
    }

    /// Entries as base-field elements, if every entry lies in the base.
    pub fn base_rows(&self) -> Option<Vec<Vec<Elem>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_base()).collect())
            .collect()
    }

    pub fn try_add(&self, other: &FieldMatrix) -> Result<FieldMatrix, MatError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatError::DimensionMismatch("add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(FieldMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn try_mul(&self, other: &FieldMatrix) -> Result<FieldMatrix, MatError> {
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.spec != other.spec {
            return Err(MatError::AlgebraMismatch);
        }
        let mut out = FieldMatrix::zero(self.spec.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    let cur = &out.entries[i * other.cols + j] + &t;
                    out.entries[i * other.cols + j] = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zero(self.spec.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise `τ`.
    pub fn tau(&self) -> Result<FieldMatrix, MatError> {
        let entries = self.entries.iter().map(tau).collect::<Result<_, _>>()?;
        Ok(FieldMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn det(&self) -> Result<Scalar, MatError> {
        det_field(self)
    }

    /// Rank over a field (not available for split quadratic algebras).
    pub fn rank(&self) -> Result<usize, MatError> {
        linalg::rank(&self.row_vecs()).map_err(zero_divisor)
    }
}

fn zero_divisor(p: NonUnitPivot) -> MatError {
    MatError::UnexpectedZeroDivisor {
        row: p.row,
        col: p.col,
    }
}

/// Exact determinant. Over a split `k[√a] ≅ k ⊕ k` the two components are
/// eliminated separately and recombined, since that algebra has zero
/// divisors.
pub fn det_field(m: &FieldMatrix) -> Result<Scalar, MatError> {
    if m.rows != m.cols {
        return Err(MatError::NotSquare(m.rows, m.cols));
    }
    let one = m.spec.one();
    match &m.spec {
        FieldSpec::Quad(ext) if ext.is_split() => {
            let r = ext.split_root().expect("split").clone();
            // x + y√a ↦ (x + y·r, x − y·r)
            let (mut c1, mut c2) = (Vec::new(), Vec::new());
            for row in m.row_vecs() {
                let (mut r1, mut r2) = (Vec::new(), Vec::new());
                for e in row {
                    let (x, y) = e.parts();
                    let yr = &y * &r;
                    r1.push(&x + &yr);
                    r2.push(&x - &yr);
                }
                c1.push(r1);
                c2.push(r2);
            }
            let base_one = ext.base().one();
            let d1 = linalg::det_field(&c1, &base_one).map_err(zero_divisor)?;
            let d2 = linalg::det_field(&c2, &base_one).map_err(zero_divisor)?;
            let half = ext.base().from_i64(2).inverse().expect("odd characteristic");
            let re = &(&d1 + &d2) * &half;
            let im = &(&(&d1 - &d2) * &half) * &r.inverse().expect("a is nonzero");
            Ok(Scalar::quad(ext, re, im))
        }
        _ => linalg::det_field(&m.row_vecs(), &one).map_err(zero_divisor),
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over a quaternion algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompMatrix {
    alg: Arc<QuatAlgebra>,
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

/// Operations of the matrix ring.
#[derive(Debug, Clone)]
pub enum MatOp<'a> {
    Add(&'a CompMatrix),
    Mul(&'a CompMatrix),
    ScalarMulRight(&'a Quaternion),
}

/// Checked ring arithmetic on quaternion matrices.
pub fn mat_arith(lhs: &CompMatrix, op: MatOp<'_>) -> Result<CompMatrix, MatError> {
    match op {
        MatOp::Add(rhs) => lhs.try_add(rhs),
        MatOp::Mul(rhs) => lhs.try_mul(rhs),
        MatOp::ScalarMulRight(q) => lhs.mul_right(q),
    }
}

impl CompMatrix {
    pub fn new(alg: Arc<QuatAlgebra>, rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self, MatError> {
        if entries.len() != rows * cols {
            return Err(MatError::DimensionMismatch(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|e| **e.algebra() != *alg) {
            return Err(MatError::AlgebraMismatch);
        }
        Ok(CompMatrix {
            alg,
            rows,
            cols,
            entries,
        })
    }

    /// Matrix from integer coefficient 4-vectors, row-major.
    pub fn from_i64(alg: &Arc<QuatAlgebra>, rows: usize, cols: usize, coeffs: &[[i64; 4]]) -> Result<Self, MatError> {
        let entries = coeffs.iter().map(|c| alg.from_i64(*c)).collect();
        CompMatrix::new(alg.clone(), rows, cols, entries)
    }

    pub fn zero(alg: &Arc<QuatAlgebra>, rows: usize, cols: usize) -> Self {
        CompMatrix {
            alg: alg.clone(),
            rows,
            cols,
            entries: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &Arc<QuatAlgebra>, n: usize) -> Self {
        let mut m = CompMatrix::zero(alg, n, n);
        for i in 0..n {
            m.entries[i * n + i] = alg.one();
        }
        m
    }

    pub fn algebra(&self) -> &Arc<QuatAlgebra> {
        &self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Quaternion {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quaternion::is_zero)
    }

    fn check(&self, other: &CompMatrix) -> Result<(), MatError> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(MatError::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &CompMatrix) -> Result<CompMatrix, MatError> {
        self.check(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatError::DimensionMismatch("add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(CompMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn try_mul(&self, other: &CompMatrix) -> Result<CompMatrix, MatError> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CompMatrix::zero(&self.alg, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.alg.zero();
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Right scalar action `Z·q`, entrywise `z_ij·q`.
    pub fn mul_right(&self, q: &Quaternion) -> Result<CompMatrix, MatError> {
        let entries = self
            .entries
            .iter()
            .map(|z| z.try_mul(q))
            .collect::<Result<_, _>>()?;
        Ok(CompMatrix {
            alg: self.alg.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Submatrix on the given (sorted) row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CompMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        CompMatrix {
            alg: self.alg.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// First `k` rows.
    pub fn top_rows(&self, k: usize) -> CompMatrix {
        let rows: Vec<usize> = (0..k.min(self.rows)).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn row_vecs(&self) -> Vec<Vec<Quaternion>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Same matrix over `(a,b)_k`; a matrix-unit algebra is carried to
    /// `(1,−1)_k` through its matrix basis.
    fn standard_form(&self) -> Result<CompMatrix, MatError> {
        match self.alg.kind() {
            QuatKind::Standard { .. } => Ok(self.clone()),
            QuatKind::Matrix2 => {
                if self.alg.base().characteristic() == 2 {
                    return Err(QuatError::NoStandardForm.into());
                }
                let target = QuatAlgebra::split_standard(self.alg.base())?;
                let entries = self
                    .entries
                    .iter()
                    .map(|z| Quaternion::from_block(&target, &z.to_block().expect("matrix units")))
                    .collect::<Option<Vec<_>>>()
                    .ok_or(MatError::NotSplitForm)?;
                CompMatrix::new(target, self.rows, self.cols, entries)
            }
        }
    }
}

impl fmt::Display for CompMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("({})", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `σ(X + vY) = [[X, −τ(Y)], [−bY, τ(X)]]` over `L = k(√a)`.
/// An `m×n` matrix goes to a `2m×2n` one.
pub fn symplectic_rep(z: &CompMatrix) -> Result<FieldMatrix, MatError> {
    let z = z.standard_form()?;
    let (m, n) = (z.rows, z.cols);
    let ext = z.alg.subfield()?;
    let spec = FieldSpec::Quad(ext);
    let mut out = FieldMatrix::zero(spec, 2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let [[a, b], [c, d]] = z.get(i, j).symplectic()?;
            out.set(i, j, a);
            out.set(i, n + j, b);
            out.set(m + i, j, c);
            out.set(m + i, n + j, d);
        }
    }
    Ok(out)
}

/// `S.det(Z) = d·τ(d)` with `d = det σ(Z)`; lies in the base field.
pub fn study_det(z: &CompMatrix) -> Result<Elem, MatError> {
    if z.rows != z.cols {
        return Err(MatError::NotSquare(z.rows, z.cols));
    }
    let d = det_field(&symplectic_rep(z)?)?;
    let prod = &d * &tau(&d)?;
    Ok(prod.to_base().expect("d·τ(d) is τ-fixed"))
}

/// Substitutes every entry by its 2×2 block: `Mat(m×n, Mat(2,k)) ≅ Mat(2m×2n, k)`.
pub fn flatten_split(z: &CompMatrix) -> Result<FieldMatrix, MatError> {
    if !z.alg.has_matrix_form() {
        return Err(MatError::NotSplitForm);
    }
    let base = z.alg.base();
    let mut out = FieldMatrix::zero(FieldSpec::Base(base), 2 * z.rows, 2 * z.cols);
    for i in 0..z.rows {
        for j in 0..z.cols {
            let block = z.get(i, j).to_block().expect("matrix form");
            for (r, row) in block.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    out.set(2 * i + r, 2 * j + c, Scalar::Base(e.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`flatten_split`].
pub fn unflatten_split(alg: &Arc<QuatAlgebra>, m: &FieldMatrix) -> Result<CompMatrix, MatError> {
    if !alg.has_matrix_form() {
        return Err(MatError::NotSplitForm);
    }
    if !m.rows.is_multiple_of(2) || !m.cols.is_multiple_of(2) {
        return Err(MatError::DimensionMismatch("odd size for block form".into()));
    }
    let rows = m.base_rows().ok_or(MatError::AlgebraMismatch)?;
    let (br, bc) = (m.rows / 2, m.cols / 2);
    let mut entries = Vec::with_capacity(br * bc);
    for i in 0..br {
        for j in 0..bc {
            let block = [
                [rows[2 * i][2 * j].clone(), rows[2 * i][2 * j + 1].clone()],
                [rows[2 * i + 1][2 * j].clone(), rows[2 * i + 1][2 * j + 1].clone()],
            ];
            entries.push(Quaternion::from_block(alg, &block).ok_or(MatError::NotSplitForm)?);
        }
    }
    CompMatrix::new(alg.clone(), br, bc, entries)
}

/// `f_D(Z) = (Z⁽¹⁾, Z⁽²⁾)` for a matrix whose entries are diagonal blocks:
/// the upper-left and lower-right entries of every block.
pub fn split_pair(z: &CompMatrix) -> Result<(FieldMatrix, FieldMatrix), MatError> {
    if z.rows != z.cols {
        return Err(MatError::NotSquare(z.rows, z.cols));
    }
    if !z.alg.has_matrix_form() {
        return Err(MatError::NotSplitForm);
    }
    let base = z.alg.base();
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for i in 0..z.rows {
        for j in 0..z.cols {
            let [[p, q], [r, s]] = z.get(i, j).to_block().expect("matrix form");
            if !q.is_zero() || !r.is_zero() {
                return Err(MatError::NotDiagonalBlock(i, j));
            }
            first.push(p);
            second.push(s);
        }
    }
    Ok((
        FieldMatrix::from_elems(base, z.rows, z.cols, first)?,
        FieldMatrix::from_elems(base, z.rows, z.cols, second)?,
    ))
}

/// Invertibility through `S.det(Z) ≠ 0`.
pub fn is_invertible_by_study(z: &CompMatrix) -> Result<bool, MatError> {
    Ok(!study_det(z)?.is_zero())
}

/// Invertibility through the determinant of the flattened `2n×2n` matrix.
pub fn is_invertible_by_flattening(z: &CompMatrix) -> Result<bool, MatError> {
    if z.rows != z.cols {
        return Err(MatError::NotSquare(z.rows, z.cols));
    }
    Ok(!det_field(&flatten_split(z)?)?.is_zero())
}

/// Uses the flattening when the algebra has a matrix realization and the
/// Study determinant otherwise.
pub fn is_invertible(z: &CompMatrix) -> Result<bool, MatError> {
    if z.alg.has_matrix_form() {
        is_invertible_by_flattening(z)
    } else {
        is_invertible_by_study(z)
    }
}

fn check_division_entries(a: &CompMatrix) -> Result<(), MatError> {
    for i in 0..a.rows {
        for j in 0..a.cols {
            let z = a.get(i, j);
            if !z.is_zero() && z.norm().is_zero() {
                return Err(MatError::UnexpectedZeroDivisor { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Right-coefficient relation among the columns of `a` over a division
/// quaternion algebra: `Σ_j col_j · x_j = 0` with `x ≠ 0`, or `None` when
/// the columns are right-independent.
pub fn skew_solve(a: &CompMatrix) -> Result<Option<Vec<Quaternion>>, MatError> {
    check_division_entries(a)?;
    let zero = a.alg.zero();
    linalg::first_null_vector(&a.row_vecs(), a.cols, &zero).map_err(zero_divisor)
}

/// Number of right-independent columns, by elimination over the skew field.
pub fn skew_column_rank(a: &CompMatrix) -> Result<usize, MatError> {
    check_division_entries(a)?;
    linalg::rank(&a.row_vecs()).map_err(zero_divisor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Elem {
        BaseField::Rationals.from_i64(v)
    }

    #[test]
    fn identity_times_matrix() {
        let h = QuatAlgebra::hamilton();
        let z = CompMatrix::from_i64(&h, 2, 2, &[[1, 2, 3, 4], [0, 1, 0, -1], [5, 0, 0, 0], [0, 0, 2, 1]]).unwrap();
        assert_eq!(CompMatrix::identity(&h, 2).try_mul(&z).unwrap(), z);
    }

    #[test]
    fn one_by_one_is_quat_mul() {
        let h = QuatAlgebra::new(q(2), q(-3)).unwrap();
        let (x, y) = (h.from_i64([1, 2, -1, 3]), h.from_i64([0, 1, 4, -2]));
        let zx = CompMatrix::new(h.clone(), 1, 1, vec![x.clone()]).unwrap();
        let zy = CompMatrix::new(h.clone(), 1, 1, vec![y.clone()]).unwrap();
        assert_eq!(zx.try_mul(&zy).unwrap().get(0, 0), &x.try_mul(&y).unwrap());
        assert_eq!(
            mat_arith(&zx, MatOp::ScalarMulRight(&y)).unwrap().get(0, 0),
            &x.try_mul(&y).unwrap()
        );
    }

    #[test]
    fn errors() {
        let h = QuatAlgebra::hamilton();
        let a = CompMatrix::zero(&h, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(MatError::DimensionMismatch(_))));
        let s = symplectic_rep(&a).unwrap();
        assert_eq!((s.rows(), s.cols()), (4, 6));
        assert_eq!(study_det(&a), Err(MatError::NotSquare(2, 3)));
        let g = QuatAlgebra::new(q(2), q(5)).unwrap();
        assert_eq!(a.try_add(&CompMatrix::zero(&g, 2, 3)), Err(MatError::AlgebraMismatch));
        assert_eq!(flatten_split(&a), Err(MatError::NotSplitForm));
    }

    #[test]
    fn det_examples() {
        let m = FieldMatrix::from_i64(BaseField::Rationals, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), Scalar::Base(q(-2)));
        let id = FieldMatrix::identity(FieldSpec::Base(BaseField::Rationals), 3);
        assert_eq!(id.det().unwrap(), Scalar::Base(q(1)));
    }

    #[test]
    fn split_quadratic_det_matches_expansion() {
        // over ℚ[√4]: det [[1+√4, 2], [3, 1−√4]] = (1+2√)(1−2√)... expanded
        let ext = crate::exactfields::QuadExt::new(q(4)).unwrap();
        let s = |x: i64, y: i64| Scalar::quad(&ext, q(x), q(y));
        let m = FieldMatrix::new(FieldSpec::Quad(ext.clone()), 2, 2, vec![s(1, 1), s(2, 0), s(3, 0), s(1, -1)]).unwrap();
        let expected = &(&s(1, 1) * &s(1, -1)) - &(&s(2, 0) * &s(3, 0));
        assert_eq!(m.det().unwrap(), expected);
        // zero-divisor pivot: 1 + ½√4 has norm 0
        let zd = Scalar::quad(&ext, q(1), BaseField::Rationals.from_ratio(1, 2));
        let m = FieldMatrix::new(FieldSpec::Quad(ext.clone()), 2, 2, vec![zd.clone(), s(0, 0), s(0, 0), s(1, 0)]).unwrap();
        assert_eq!(m.det().unwrap(), zd);
    }

    #[test]
    fn hamilton_study_det() {
        let h = QuatAlgebra::hamilton();
        let z = CompMatrix::from_i64(&h, 1, 1, &[[2, 1, 0, 0]]).unwrap();
        assert_eq!(study_det(&z).unwrap(), q(25));
        assert_eq!(study_det(&CompMatrix::identity(&h, 3)).unwrap(), q(1));
        let s = symplectic_rep(&CompMatrix::identity(&h, 2)).unwrap();
        assert_eq!(s, FieldMatrix::identity(s.spec().clone(), 4));
    }

    #[test]
    fn flatten_identity_and_split_pair() {
        let alg = QuatAlgebra::mat2(BaseField::Rationals);
        let one = CompMatrix::identity(&alg, 1);
        assert_eq!(
            flatten_split(&one).unwrap(),
            FieldMatrix::identity(FieldSpec::Base(BaseField::Rationals), 2)
        );
        let (a, b) = split_pair(&CompMatrix::identity(&alg, 2)).unwrap();
        assert_eq!(a, FieldMatrix::identity(FieldSpec::Base(BaseField::Rationals), 2));
        assert_eq!(b, a);
        let d = CompMatrix::from_i64(&alg, 1, 1, &[[2, 0, 0, 3]]).unwrap();
        let (a, b) = split_pair(&d).unwrap();
        assert_eq!(a, FieldMatrix::from_i64(BaseField::Rationals, &[&[2]]));
        assert_eq!(b, FieldMatrix::from_i64(BaseField::Rationals, &[&[3]]));
        let off = CompMatrix::from_i64(&alg, 1, 1, &[[2, 1, 0, 3]]).unwrap();
        assert_eq!(split_pair(&off), Err(MatError::NotDiagonalBlock(0, 0)));
    }

    #[test]
    fn invertibility_basics() {
        let h = QuatAlgebra::hamilton();
        assert!(is_invertible(&CompMatrix::identity(&h, 2)).unwrap());
        assert!(!is_invertible(&CompMatrix::zero(&h, 2, 2)).unwrap());
        let s = QuatAlgebra::mat2(BaseField::Rationals);
        // block [[1,0],[0,0]] is a rank-one idempotent
        let e = CompMatrix::from_i64(&s, 1, 1, &[[1, 0, 0, 0]]).unwrap();
        assert!(!is_invertible(&e).unwrap());
    }

    #[test]
    fn skew_solve_examples() {
        let h = QuatAlgebra::hamilton();
        let col = [[1, 2, 0, -1], [0, 3, 1, 1]];
        let a = CompMatrix::from_i64(&h, 2, 2, &[col[0], col[0], col[1], col[1]]).unwrap();
        let x = skew_solve(&a).unwrap().unwrap();
        assert_eq!(x, vec![h.one(), h.one().neg()]);
        assert_eq!(skew_solve(&CompMatrix::identity(&h, 3)).unwrap(), None);
        let f3 = BaseField::prime(3).unwrap();
        let s = QuatAlgebra::split_standard(f3).unwrap();
        let zd = CompMatrix::from_i64(&s, 1, 2, &[[1, 1, 0, 0], [1, 0, 0, 0]]).unwrap();
        assert!(matches!(skew_solve(&zd), Err(MatError::UnexpectedZeroDivisor { .. })));
    }
}
