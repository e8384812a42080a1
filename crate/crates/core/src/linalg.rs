//! Gaussian elimination shared by every coefficient ring in the crate.
//!
//! Rows are only ever multiplied on the left, so the same routines are valid
//! over the (noncommutative) quaternion algebras: row operations preserve the
//! solution set of `A·x = 0` for right-coefficient vectors `x`.

use std::fmt::Debug;

use crate::exactfields::{Elem, Scalar};

/// Minimal ring interface used by the elimination routines.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Two-sided inverse; `None` for zero and for zero divisors.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for Elem {
    fn zero_like(&self) -> Self {
        Elem::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Elem::one_like(self)
    }
    fn is_zero(&self) -> bool {
        Elem::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Scalar::one_like(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

/// A column whose nonzero entries are all non-units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnitPivot {
    pub row: usize,
    pub col: usize,
}

/// Reduced row echelon form in place. Returns the pivot columns in order.
/// Pivots are the first unit found scanning down each column.
pub fn row_reduce<T: Ring>(rows: &mut [Vec<T>]) -> Result<Vec<usize>, NonUnitPivot> {
    let m = rows.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let mut found = None;
        for i in r..m {
            if let Some(inv) = rows[i][c].unit_inverse() {
                found = Some((i, inv));
                break;
            }
        }
        let Some((i, inv)) = found else {
            if let Some(i) = (r..m).find(|&i| !rows[i][c].is_zero()) {
                return Err(NonUnitPivot { row: i, col: c });
            }
            continue;
        };
        rows.swap(i, r);
        let scaled: Vec<T> = rows[r].iter().map(|x| inv.times(x)).collect();
        rows[r] = scaled;
        for i in 0..m {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..n {
                let t = factor.times(&rows[r][j]);
                rows[i][j] = rows[i][j].minus(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Rank of a matrix over a division ring.
pub fn rank<T: Ring>(rows: &[Vec<T>]) -> Result<usize, NonUnitPivot> {
    let mut work = rows.to_vec();
    Ok(row_reduce(&mut work)?.len())
}

/// First nonzero right null vector: the lowest-index free column is set to
/// one and the other free columns to zero, then the vector is scaled on the
/// right so its first nonzero entry is one. `None` when only the trivial
/// solution exists. `zero` supplies the ring when `rows` is empty.
pub fn first_null_vector<T: Ring>(
    rows: &[Vec<T>],
    ncols: usize,
    zero: &T,
) -> Result<Option<Vec<T>>, NonUnitPivot> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work)?;
    let Some(free) = (0..ncols).find(|c| !pivots.contains(c)) else {
        return Ok(None);
    };
    let mut x = vec![zero.zero_like(); ncols];
    x[free] = zero.one_like();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][free].negated();
    }
    let lead = x.iter().find(|e| !e.is_zero()).expect("free entry is one");
    if let Some(inv) = lead.unit_inverse() {
        x = x.iter().map(|e| e.times(&inv)).collect();
    }
    Ok(Some(x))
}

/// Basis of the right null space over a field, one vector per free column.
pub fn null_space<T: Ring>(rows: &[Vec<T>], ncols: usize, zero: &T) -> Result<Vec<Vec<T>>, NonUnitPivot> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![zero.zero_like(); ncols];
        x[free] = zero.one_like();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = work[r][free].negated();
        }
        basis.push(x);
    }
    Ok(basis)
}

/// One solution of `A·x = b` over a field, `None` if inconsistent.
pub fn solve<T: Ring>(rows: &[Vec<T>], rhs: &[T], zero: &T) -> Result<Option<Vec<T>>, NonUnitPivot> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug)?;
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![zero.zero_like(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][n].clone();
    }
    Ok(Some(x))
}

/// Determinant over a commutative field by division elimination.
pub fn det_field<T: Ring>(rows: &[Vec<T>], one: &T) -> Result<T, NonUnitPivot> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = one.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(one.zero_like());
        };
        let inv = a[p][c]
            .unit_inverse()
            .ok_or(NonUnitPivot { row: p, col: c })?;
        if p != c {
            a.swap(p, c);
            det = det.negated();
        }
        det = det.times(&a[c][c]);
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].times(&inv);
            for j in c..n {
                let t = f.times(&a[c][j]);
                a[i][j] = a[i][j].minus(&t);
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfields::BaseField;

    fn q(v: i64) -> Elem {
        BaseField::Rationals.from_i64(v)
    }

    fn mat(v: &[&[i64]]) -> Vec<Vec<Elem>> {
        v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_two_by_two() {
        assert_eq!(det_field(&mat(&[&[1, 2], &[3, 4]]), &q(1)).unwrap(), q(-2));
    }

    #[test]
    fn null_vector_of_equal_columns() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        let x = first_null_vector(&a, 2, &q(0)).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(-1)]);
        let id = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(first_null_vector(&id, 2, &q(0)).unwrap(), None);
    }

    #[test]
    fn solve_consistency() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        assert!(solve(&a, &[q(1), q(2)], &q(0)).unwrap().is_none());
        let x = solve(&a, &[q(3), q(3)], &q(0)).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
    }
}
