//! Exact rational vectors and small dense matrices.
//!
//! Everything in this crate is computed over `Q`; there is no floating point
//! anywhere. Coordinates stay small (root lattices of rank at most 8), so a
//! 64-bit reduced fraction is plenty.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type used throughout.
pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Returns the integer value of `x`, or `None` when it has a denominator.
pub fn to_integer(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

/// Formats a rational the way the wire formats expect: `p/q`, or `p` when the
/// denominator is one.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(text: &str) -> Result<Q> {
    text.trim()
        .parse::<Q>()
        .map_err(|_| Error::parse(0, format!("invalid rational `{text}`")))
}

/// A coordinate vector in the ambient orthonormal basis `e_1, ..., e_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector(Vec<Q>);

impl RationalVector {
    pub fn new(coords: Vec<Q>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Q::zero(); dim])
    }

    /// The basis vector `e_i`, with `i` counted from one.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i - 1] = Q::one();
        v
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// Euclidean inner product; panics on a dimension mismatch.
    pub fn dot(&self, other: &Self) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn scale(&self, c: Q) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: Q, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn add_scaled_in_place(&mut self, c: Q, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += c * b;
        }
    }
}

/// Exact inner product with a dimension check.
pub fn inner_product(u: &RationalVector, v: &RationalVector) -> Result<Q> {
    u.check_dim(v)?;
    Ok(u.dot(v))
}

impl Index<usize> for RationalVector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl IndexMut<usize> for RationalVector {
    fn index_mut(&mut self, i: usize) -> &mut Q {
        &mut self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        self.add_scaled(Q::one(), rhs)
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        self.add_scaled(-Q::one(), rhs)
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Square matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Q::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Q::one();
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![Q::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { n, data }
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.n, v.dim());
        RationalVector::new(
            (0..self.n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coords())
                        .fold(Q::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// Right-multiplies in place by the reflection `1 - root ⊗ coroot`,
    /// i.e. `M <- M - (M root) coroot^T`.
    pub fn mul_reflection_right(&mut self, root: &RationalVector, coroot: &RationalVector) {
        let n = self.n;
        let image = self.apply(root);
        for i in 0..n {
            let c = image[i];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let d = coroot[j];
                if !d.is_zero() {
                    self.data[i * n + j] -= c * d;
                }
            }
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

/// Inverts a square matrix by Gauss-Jordan elimination. Returns `None` for a
/// singular matrix.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.size();
    let mut a: Vec<Vec<Q>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= p;
            inv[col][j] *= p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for j in 0..n {
                let (x, y) = (a[col][j], inv[col][j]);
                a[r][j] -= f * x;
                inv[r][j] -= f * y;
            }
        }
    }
    Some(RationalMatrix::from_rows(inv))
}

/// Coordinates of a vector on a fixed linearly independent family, solved
/// through the inverse Gram matrix.
#[derive(Clone, Debug)]
pub struct Basis {
    vectors: Vec<RationalVector>,
    gram_inverse: RationalMatrix,
}

impl Basis {
    /// Panics if the family is linearly dependent.
    pub fn new(vectors: Vec<RationalVector>) -> Self {
        let gram = RationalMatrix::from_rows(
            vectors
                .iter()
                .map(|u| vectors.iter().map(|v| u.dot(v)).collect())
                .collect(),
        );
        let gram_inverse = invert(&gram).expect("basis vectors must be independent");
        Self { vectors, gram_inverse }
    }

    pub fn vectors(&self) -> &[RationalVector] {
        &self.vectors
    }

    pub fn combine(&self, coeffs: &[Q]) -> RationalVector {
        let dim = self.vectors[0].dim();
        let mut out = RationalVector::zero(dim);
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            out.add_scaled_in_place(*c, v);
        }
        out
    }

    /// Coefficients `c` with `v = sum c_i b_i`, or `None` when `v` lies
    /// outside the span.
    pub fn coordinates(&self, v: &RationalVector) -> Option<Vec<Q>> {
        let pairings = RationalVector::new(self.vectors.iter().map(|b| b.dot(v)).collect());
        let coeffs = self.gram_inverse.apply(&pairings).into_coords();
        (self.combine(&coeffs) == *v).then_some(coeffs)
    }

    /// Like [`Basis::coordinates`] but also requires integer coefficients.
    pub fn integer_coordinates(&self, v: &RationalVector) -> Option<Vec<i64>> {
        self.coordinates(v)?.iter().map(to_integer).collect::<Option<Vec<_>>>()
    }
}

pub fn abs_sum(coeffs: &[i64]) -> i64 {
    coeffs.iter().map(|c| c.abs()).sum()
}

pub fn all_nonnegative(coeffs: &[Q]) -> bool {
    coeffs.iter().all(|c| !c.is_negative())
}
