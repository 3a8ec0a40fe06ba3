//! Exact vectors and square matrices over a generic ring scalar, plus the
//! integer-lattice machinery (Hermite normal form, residue systems) used to
//! pick canonical coset representatives.

mod lattice;

pub use lattice::{in_lattice, lattice_decompose, residues, Lattice, ResidueSystem};

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// A column vector with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(Vec<T>);

impl<T: Ring> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.clone() + b.clone();
        }
    }

    pub(crate) fn sub_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.clone() - b.clone();
        }
    }
}

impl<T: Ring + Signed + PartialOrd> Vector<T> {
    /// Maximum absolute coordinate (zero for the empty vector).
    pub fn norm_inf(&self) -> T {
        self.0
            .iter()
            .map(Signed::abs)
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn norm_l1(&self) -> T {
        self.0.iter().map(Signed::abs).fold(T::zero(), |s, x| s + x)
    }
}

impl Vector<BigInt> {
    pub fn from_i64(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> Vector<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Ring> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<T: Ring> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<T: Ring> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Config("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![T::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Exact matrix-vector product.
    pub fn apply(&self, z: &Vector<T>) -> Result<Vector<T>> {
        if z.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: z.dim(),
            });
        }
        Ok(self.apply_unchecked(z))
    }

    pub(crate) fn apply_unchecked(&self, z: &Vector<T>) -> Vector<T> {
        Vector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(z.coords())
                        .fold(T::zero(), |acc, (m, x)| acc + m.clone() * x.clone())
                })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if rhs.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        let n = self.n;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return T::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = det * p.clone();
            for r in col + 1..n {
                let f = m.get(r, col).clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    *m.get_mut(r, c) = v;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m.get(r, col).is_zero())
                .ok_or_else(|| Error::Config("matrix is singular".into()))?;
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = m.get(col, col).clone();
            for c in 0..n {
                *m.get_mut(col, c) = m.get(col, c).clone() / p.clone();
                *inv.get_mut(col, c) = inv.get(col, c).clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    *m.get_mut(r, c) = v;
                    let w = inv.get(r, c).clone() - f.clone() * inv.get(col, c).clone();
                    *inv.get_mut(r, c) = w;
                }
            }
        }
        Ok(inv)
    }
}

impl<T> Matrix<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.entries.swap(a * self.n + c, b * self.n + c);
        }
    }
}

impl Matrix<BigInt> {
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact integer determinant.
    pub fn int_det(&self) -> BigInt {
        let d = self.to_rational().det();
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    /// Exact rational inverse; errors on singular input.
    pub fn inverse_rational(&self) -> Result<Matrix<BigRational>> {
        self.to_rational().inverse()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `a / b` for rational scalars built from integers.
pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}
