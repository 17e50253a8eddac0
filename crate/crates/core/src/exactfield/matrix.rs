use super::value::{FieldSpec, FieldValue};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// No rows were supplied.
    Empty,
    /// Row lengths do not match the number of rows.
    NotSquare,
    /// Two matrices of different dimensions met in one operation.
    DimensionMismatch,
    /// Entries from different fields met in one operation.
    FieldMismatch,
    /// Inversion of a singular matrix was requested.
    Singular,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "matrix has no rows"),
            MatrixError::NotSquare => write!(f, "matrix is not square"),
            MatrixError::DimensionMismatch => write!(f, "matrix dimensions differ"),
            MatrixError::FieldMismatch => write!(f, "matrix entries from different fields"),
            MatrixError::Singular => write!(f, "matrix is singular"),
        }
    }
}

impl std::error::Error for MatrixError {}

/// A dense square matrix over one exact field, rows and columns indexed
/// from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    spec: FieldSpec,
    n: usize,
    entries: Vec<FieldValue>,
}

impl SquareMatrix {
    pub fn zero(spec: &FieldSpec, n: usize) -> SquareMatrix {
        assert!(n >= 1, "matrix dimension must be positive");
        SquareMatrix {
            spec: *spec,
            n,
            entries: vec![FieldValue::zero(spec); n * n],
        }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zero(spec, n);
        for i in 0..n {
            m.set(i, i, FieldValue::one(spec));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldValue>>) -> Result<SquareMatrix, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        let spec = rows[0][0].spec();
        let entries: Vec<FieldValue> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.spec() != spec) {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(SquareMatrix { spec, n, entries })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64_rows(spec: &FieldSpec, rows: &[&[i64]]) -> SquareMatrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| FieldValue::from_i64(spec, v)).collect())
            .collect();
        SquareMatrix::from_rows(rows).expect("literal rows form a square matrix")
    }

    /// Builds diag(values).
    pub fn diagonal(values: &[FieldValue]) -> Result<SquareMatrix, MatrixError> {
        if values.is_empty() {
            return Err(MatrixError::Empty);
        }
        let spec = values[0].spec();
        if values.iter().any(|v| v.spec() != spec) {
            return Err(MatrixError::FieldMismatch);
        }
        let mut m = SquareMatrix::zero(&spec, values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldValue {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldValue) {
        assert!(v.spec() == self.spec, "entry from wrong field");
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldValue]> {
        self.entries.chunks(self.n)
    }

    fn check_compatible(&self, other: &SquareMatrix) -> Result<(), MatrixError> {
        if self.spec != other.spec {
            return Err(MatrixError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(SquareMatrix {
            spec: self.spec,
            n: self.n,
            entries,
        })
    }

    pub fn checked_sub(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(SquareMatrix {
            spec: self.spec,
            n: self.n,
            entries,
        })
    }

    pub fn checked_mul(&self, other: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
        self.check_compatible(other)?;
        let n = self.n;
        let zero = FieldValue::zero(&self.spec);
        let mut out = SquareMatrix::zero(&self.spec, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal call sites where compatibility is
    /// already established.
    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        self.checked_add(other).expect("incompatible matrices")
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        self.checked_sub(other).expect("incompatible matrices")
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        self.checked_mul(other).expect("incompatible matrices")
    }

    pub fn scale(&self, c: &FieldValue) -> SquareMatrix {
        assert!(c.spec() == self.spec, "scalar from wrong field");
        let entries = self.entries.iter().map(|e| e.mul(c)).collect();
        SquareMatrix {
            spec: self.spec,
            n: self.n,
            entries,
        }
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut out = SquareMatrix::zero(&self.spec, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> FieldValue {
        let mut acc = FieldValue::zero(&self.spec);
        for i in 0..self.n {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// XY - YX.
    pub fn commutator(&self, other: &SquareMatrix) -> SquareMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[FieldValue]) -> Vec<FieldValue> {
        assert!(v.len() == self.n, "vector length mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = FieldValue::zero(&self.spec);
                for k in 0..self.n {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(&v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination with row pivoting.
    pub fn inverse(&self) -> Result<SquareMatrix, MatrixError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = SquareMatrix::identity(&self.spec, n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(MatrixError::Singular)?;
            if pivot_row != col {
                for j in 0..n {
                    let x = a.get(pivot_row, j).clone();
                    let y = a.get(col, j).clone();
                    a.set(pivot_row, j, y);
                    a.set(col, j, x);
                    let x = inv.get(pivot_row, j).clone();
                    let y = inv.get(col, j).clone();
                    inv.set(pivot_row, j, y);
                    inv.set(col, j, x);
                }
            }
            let pivot = a.get(col, col).clone();
            let pivot_inv = pivot.inv().expect("pivot chosen nonzero");
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&pivot_inv));
                inv.set(col, j, inv.get(col, j).mul(&pivot_inv));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let new_a = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, new_a);
                    let new_inv = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, new_inv);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Exact matrix product, checking dimension and field agreement.
pub fn mat_mul(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
    a.checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAT: FieldSpec = FieldSpec::Rational;

    #[test]
    fn identity_is_neutral() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2], &[3, 4]]);
        let id = SquareMatrix::identity(&RAT, 2);
        assert_eq!(mat_mul(&id, &m).unwrap(), m);
        assert_eq!(mat_mul(&m, &id).unwrap(), m);
    }

    #[test]
    fn product_against_hand_computation() {
        let a = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2], &[3, 4]]);
        let b = SquareMatrix::from_i64_rows(&RAT, &[&[5, 6], &[7, 8]]);
        let want = SquareMatrix::from_i64_rows(&RAT, &[&[19, 22], &[43, 50]]);
        assert_eq!(mat_mul(&a, &b).unwrap(), want);
    }

    #[test]
    fn dimension_and_field_checks() {
        let a = SquareMatrix::identity(&RAT, 2);
        let b = SquareMatrix::identity(&RAT, 3);
        assert_eq!(mat_mul(&a, &b), Err(MatrixError::DimensionMismatch));
        let f5 = FieldSpec::prime_field(5).unwrap();
        let c = SquareMatrix::identity(&f5, 2);
        assert_eq!(mat_mul(&a, &c), Err(MatrixError::FieldMismatch));
    }

    #[test]
    fn inverse_round_trip() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[2, 1, 0], &[0, 1, -1], &[3, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SquareMatrix::identity(&RAT, 3));
        assert_eq!(inv.mul(&m), SquareMatrix::identity(&RAT, 3));
    }

    #[test]
    fn inverse_needs_row_swap() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[0, 1], &[1, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(MatrixError::Singular));
    }

    #[test]
    fn inverse_over_prime_field() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let m = SquareMatrix::from_i64_rows(&f7, &[&[2, 3], &[1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SquareMatrix::identity(&f7, 2));
    }

    #[test]
    fn trace_and_commutator() {
        let a = SquareMatrix::from_i64_rows(&RAT, &[&[1, 2], &[3, 4]]);
        let b = SquareMatrix::from_i64_rows(&RAT, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.trace(), FieldValue::from_i64(&RAT, 5));
        // [a,b] computed by hand: ab = [[2,1],[4,3]], ba = [[3,4],[1,2]].
        let want = SquareMatrix::from_i64_rows(&RAT, &[&[-1, -3], &[3, 1]]);
        assert_eq!(a.commutator(&b), want);
    }
}
