//! Dense matrices over exact rings, fraction-free determinants and
//! rational linear algebra.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::{AlgebraError, Integer, Rational};

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Integer>;
pub type RatMatrix = Matrix<Rational>;
pub type LaurentMatrix = Matrix<LaurentPoly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Ragged);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, cols: &[Vec<T>]) -> Self {
        Self::from_fn(n_rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.rows != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Integral domain operations needed by fraction-free elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl ExactRing for LaurentPoly {
    fn zero_elem() -> Self {
        LaurentPoly::zero()
    }
    fn one_elem() -> Self {
        LaurentPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        LaurentPoly::div_exact(self, rhs).expect("inexact Bareiss division")
    }
}

/// Bareiss fraction-free determinant over any exact integral domain.
pub fn det_bareiss<T: ExactRing>(m: &Matrix<T>) -> Result<T, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(T::one_elem());
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = T::one_elem();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero_elem() {
            let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero_elem()) else {
                return Ok(T::zero_elem());
            };
            a.swap_rows(k, r);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].ring_mul(&a[(k, k)]).ring_sub(&a[(i, k)].ring_mul(&a[(k, j)]));
                a[(i, j)] = num.div_exact(&prev);
            }
            a[(i, k)] = T::zero_elem();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if sign_flip { d.ring_neg() } else { d })
}

pub fn det_int(m: &IntMatrix) -> Result<Integer, AlgebraError> {
    det_bareiss(m)
}

pub fn det_laurent(m: &LaurentMatrix) -> Result<LaurentPoly, AlgebraError> {
    det_bareiss(m)
}

pub fn identity_int(n: usize) -> IntMatrix {
    Matrix::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
}

pub fn identity_rat(n: usize) -> RatMatrix {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.map(|x| BigRational::from_integer(x.clone()))
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .expect("ragged literal")
}

pub fn diag_int(d: &[Integer]) -> IntMatrix {
    let n = d.len();
    Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { BigInt::zero() })
}

fn mul_generic<T>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, AlgebraError>
where
    T: Clone + Zero,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    if a.ncols() != b.nrows() {
        return Err(AlgebraError::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(Matrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        let mut acc = T::zero();
        for k in 0..a.ncols() {
            acc = acc + &a[(i, k)] * &b[(k, j)];
        }
        acc
    }))
}

impl IntMatrix {
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        mul_generic(self, rhs)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if (self.nrows(), self.ncols()) != (rhs.nrows(), rhs.ncols()) {
            return Err(AlgebraError::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(Matrix::from_fn(self.nrows(), self.ncols(), |i, j| {
            &self[(i, j)] - &rhs[(i, j)]
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }
}

impl RatMatrix {
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        mul_generic(self, rhs)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(r, j)] * &f;
                        self[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = self.hstack(&identity_rat(n))?;
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(AlgebraError::Singular);
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low to high
    /// (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> Result<Vec<Rational>, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut mk = Matrix::from_fn(n, n, |_, _| BigRational::zero());
        for k in 1..=n {
            let mut next = self.mul(&mk)?;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next)?;
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
            mk = next;
        }
        Ok(coeffs)
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Integer> {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}

/// Basis of the right kernel, each vector cleared to coprime integers.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Integer>> {
    let mut r = m.clone();
    let pivots = r.rref();
    let free: Vec<usize> = (0..m.ncols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.ncols()];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPoly;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, c)
    }

    fn ratm(rows: &[&[(i64, i64)]]) -> RatMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_examples() {
        let d = diag_int(&[3, 5, 17].map(BigInt::from));
        assert_eq!(det_int(&d).unwrap(), BigInt::from(255));
        let d = diag_int(&[2, 4, 16].map(BigInt::from));
        assert_eq!(det_int(&d).unwrap(), BigInt::from(128));
        let empty: IntMatrix = Matrix::from_rows(vec![]).unwrap();
        assert_eq!(det_int(&empty).unwrap(), BigInt::one());
        assert!(matches!(
            det_int(&int_matrix(&[&[1, 2]])),
            Err(AlgebraError::NotSquare(1, 2))
        ));
        // pivot swap path
        assert_eq!(det_int(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn laurent_det_examples() {
        let m = Matrix::from_rows(vec![vec![LaurentPoly::t()]]).unwrap();
        assert_eq!(det_laurent(&m).unwrap(), LaurentPoly::t());
        let m = Matrix::from_rows(vec![
            vec![LaurentPoly::t(), LaurentPoly::one()],
            vec![LaurentPoly::one(), LaurentPoly::t()],
        ])
        .unwrap();
        assert_eq!(det_laurent(&m).unwrap(), lp(0, &[-1, 0, 1]));
        let m = Matrix::from_rows(vec![
            vec![lp(0, &[-2, 3]), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), lp(0, &[-3, 2])],
        ])
        .unwrap();
        assert_eq!(det_laurent(&m).unwrap(), lp(0, &[6, -13, 6]));
    }

    #[test]
    fn block_triangular_laurent_det_is_product() {
        let a = Matrix::from_rows(vec![
            vec![lp(-1, &[1, 2]), lp(0, &[3])],
            vec![lp(0, &[0, 1]), lp(0, &[1, -1])],
        ])
        .unwrap();
        let b = Matrix::from_rows(vec![vec![lp(0, &[5, 0, 1])]]).unwrap();
        let full = Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (i, j) if i < 2 && j < 2 => a[(i, j)].clone(),
            (2, 2) => b[(0, 0)].clone(),
            (2, _) => lp(0, &[7, 1]),
            _ => LaurentPoly::zero(),
        });
        assert_eq!(
            det_laurent(&full).unwrap(),
            &det_laurent(&a).unwrap() * &det_laurent(&b).unwrap()
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&identity_rat(3)).is_empty());
        let z = ratm(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 2);
        assert_eq!(to_rational(&Matrix::from_columns(2, &k)).rank(), 2);
        let k = kernel_basis(&ratm(&[&[(1, 1), (1, 1)]]));
        assert_eq!(k, vec![vec![BigInt::from(1), BigInt::from(-1)]]);
    }

    #[test]
    fn inverse_and_charpoly() {
        let m = ratm(&[&[(2, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), identity_rat(2));
        // x^2 - 3x + 1
        let cp = m.charpoly().unwrap();
        assert_eq!(
            cp,
            vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer((-3).into()),
                BigRational::from_integer(1.into())
            ]
        );
        let sing = ratm(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert!(matches!(sing.inverse(), Err(AlgebraError::Singular)));
    }
}
