//! Dense row-major complex matrices.
//!
//! Everything here is index bookkeeping: the Kronecker product, the slot
//! swap `T(A⊗B) = B⊗A`, and the `m×m` blocks `C_ij` of an `(n·m)×(n·m)`
//! matrix.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Square diagonal matrix with the given real entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from nested rows of real values.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0))).collect();
        Self::new(r, c, data)
    }

    /// Outer product `v w†`.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m[(i, j)] = vi * wj.conj();
            }
        }
        m
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Squared Frobenius norm `Σ |a_ij|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Tr(A B†) = Σ a_ij conj(b_ij)`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).sum())
    }

    /// Largest `|a_ij − conj(a_ji)|`; `None` for non-square matrices.
    pub fn hermitian_defect(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Some(worst)
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.cols });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `checked_*` methods return errors.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("shape mismatch in matrix addition")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("shape mismatch in matrix subtraction")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `A ⊗ B`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * br, a.cols * bc);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for r in 0..br {
                for s in 0..bc {
                    out[(i * br + r, j * bc + s)] = aij * b[(r, s)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a nonempty list of factors, slot 0 leftmost.
pub fn tensor_product_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut iter = factors.into_iter();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, f| tensor_product(&acc, f)))
}

/// The index permutation `T` with `T(A⊗B) = B⊗A` for `A` of size `n×n`
/// and `B` of size `m×m`.
///
/// `T(C)[(k·n + i), (l·n + j)] = C[(i·m + k), (j·m + l)]`. Applying the
/// transform again with `(m, n)` restores `C`.
pub fn swap_transform(c: &ComplexMatrix, n: usize, m: usize) -> Result<ComplexMatrix> {
    let size = n * m;
    if c.rows != size || c.cols != size {
        return Err(Error::Shape(format!("swap_transform expects a {size}x{size} matrix, got {}x{}", c.rows, c.cols)));
    }
    let mut out = ComplexMatrix::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[(k * n + i, l * n + j)] = c[(i * m + k, j * m + l)];
                }
            }
        }
    }
    Ok(out)
}

/// The `m×m` block `C_ij` of an `(n·m)×(n·m)` matrix, i.e. entries
/// `C[(i·m + r), (j·m + s)]`. For `C = A⊗B` this is `a_ij · B`.
pub fn block(c: &ComplexMatrix, i: usize, j: usize, n: usize, m: usize) -> Result<ComplexMatrix> {
    let size = n * m;
    if c.rows != size || c.cols != size {
        return Err(Error::Shape(format!("block expects a {size}x{size} matrix, got {}x{}", c.rows, c.cols)));
    }
    if i >= n || j >= n {
        return Err(Error::InvalidArgument(format!("block index ({i}, {j}) outside 0..{n}")));
    }
    let mut out = ComplexMatrix::zeros(m, m);
    for r in 0..m {
        for s in 0..m {
            out[(r, s)] = c[(i * m + r, j * m + s)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(rows: usize, cols: usize, seed: f64) -> ComplexMatrix {
        let data = (0..rows * cols)
            .map(|k| {
                let x = (k as f64 + 1.0) * seed;
                c(x.sin(), (1.7 * x).cos())
            })
            .collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn identity_tensor_identity() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let prod = tensor_product(&half, &half);
        assert_eq!(prod, ComplexMatrix::identity(4).scale_real(0.25));
    }

    #[test]
    fn diagonal_expansion() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::identity(2).scale_real(0.5);
        assert_eq!(tensor_product(&a, &b), ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]));
    }

    #[test]
    fn trace_is_multiplicative() {
        let a = sample(3, 3, 0.37);
        let b = sample(2, 2, 1.13);
        let lhs = tensor_product(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn mixed_product() {
        let (a, b) = (sample(2, 2, 0.3), sample(3, 3, 0.7));
        let (cm, d) = (sample(2, 2, 1.1), sample(3, 3, 0.2));
        let lhs = &tensor_product(&a, &b) * &tensor_product(&cm, &d);
        let rhs = tensor_product(&(&a * &cm), &(&b * &d));
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn swap_exchanges_factors() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::identity(2).scale_real(0.5);
        let swapped = swap_transform(&tensor_product(&a, &b), 2, 2).unwrap();
        assert_eq!(swapped, tensor_product(&b, &a));

        let a = sample(2, 2, 0.5);
        let b = sample(3, 3, 0.9);
        let swapped = swap_transform(&tensor_product(&a, &b), 2, 3).unwrap();
        assert_eq!(swapped, tensor_product(&b, &a));
    }

    #[test]
    fn swap_round_trip_and_norm() {
        let m = sample(6, 6, 0.41);
        let once = swap_transform(&m, 2, 3).unwrap();
        assert!((once.norm_sqr() - m.norm_sqr()).abs() < 1e-12);
        assert_eq!(swap_transform(&once, 3, 2).unwrap(), m);
        assert!(swap_transform(&m, 2, 2).is_err());
    }

    #[test]
    fn blocks_of_kronecker_product() {
        let a = sample(2, 2, 0.25);
        let b = sample(3, 3, 0.6);
        let k = tensor_product(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                let blk = block(&k, i, j, 2, 3).unwrap();
                assert!(blk.max_abs_diff(&b.scale(a[(i, j)])).unwrap() < 1e-15);
            }
        }
        assert!(block(&k, 2, 0, 2, 3).is_err());
        assert!(block(&k, 0, 0, 3, 3).is_err());
    }

    #[test]
    fn adjoint_and_inner() {
        let a = sample(2, 3, 0.8);
        assert_eq!(a.adjoint().adjoint(), a);
        let ip = a.inner(&a).unwrap();
        assert!((ip.re - a.norm_sqr()).abs() < 1e-12 && ip.im.abs() < 1e-12);
        assert!(a.inner(&sample(3, 2, 0.1)).is_err());
    }
}
