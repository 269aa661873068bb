//! Dense matrices over an exact scalar type.

use std::fmt;
use std::ops::Mul;

use crate::scalar::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, value: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order; used when a matrix is viewed as a vector.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Field> Matrix<T> {
    /// Rank by Gaussian elimination with lowest-index nonzero pivots.
    pub fn rank(&self) -> usize {
        let mut echelon = RowEchelon::new(self.cols);
        for i in 0..self.rows {
            echelon.insert(self.row(i).to_vec());
        }
        echelon.rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Incrementally built row echelon basis of a subspace of `T^width`.
///
/// Rows are reduced against the current pivots on insertion, so the rank of a
/// long stream of vectors can be tracked without materializing the matrix.
#[derive(Clone, Debug)]
pub struct RowEchelon<T> {
    width: usize,
    // (pivot column, row normalized so that the pivot entry is one)
    pivots: Vec<(usize, Vec<T>)>,
}

impl<T: Field> RowEchelon<T> {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.width
    }

    /// Inserts a vector; returns `true` if it was independent of the span so far.
    pub fn insert(&mut self, mut v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.width);
        for (col, row) in &self.pivots {
            if v[*col].is_zero() {
                continue;
            }
            let factor = v[*col].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - factor.clone() * r.clone();
                }
            }
        }
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / v[col].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        // keep earlier pivots reduced against the new row so insertion order
        // never matters for the pivot test above
        for (_, row) in self.pivots.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = x.clone() - factor.clone() * r.clone();
                }
            }
        }
        self.pivots.push((col, v));
        true
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.mul_ref(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(q(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).rank(), 3);
        assert!(q(&[&[2, 0], &[0, 2]]).is_nonsingular());
        assert_eq!(q(&[&[1, 1, 1]]).nullity(), 2);
    }

    #[test]
    fn kron_and_product() {
        let x = q(&[&[0, 1], &[1, 0]]);
        let z = q(&[&[1, 0], &[0, -1]]);
        let xz = x.kron(&z);
        assert_eq!(xz.rows(), 4);
        assert_eq!(&xz * &xz, Matrix::identity(4));
        assert_eq!((&x * &z).trace(), Rational::from_integer(0));
    }

    #[test]
    fn echelon_insertion_detects_dependence() {
        let mut e = RowEchelon::<Rational>::new(3);
        let v = |a: i64, b: i64, c: i64| {
            vec![
                Rational::from_integer(a),
                Rational::from_integer(b),
                Rational::from_integer(c),
            ]
        };
        assert!(e.insert(v(0, 1, 1)));
        assert!(e.insert(v(1, 1, 0)));
        assert!(!e.insert(v(1, 2, 1)));
        assert!(e.insert(v(0, 0, 5)));
        assert!(e.is_full());
    }
}
