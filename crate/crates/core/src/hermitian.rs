//! Hermitian matrices and Hilbert–Schmidt geometry.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{tensor_product, ComplexMatrix};
use crate::tol;

/// A square complex matrix equal to its conjugate transpose.
///
/// Construction accepts inputs whose asymmetry is at most
/// [`tol::HERMITIAN`] and stores the symmetrised `(A + A†)/2`; anything
/// further from Hermitian is rejected rather than repaired.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m
            .hermitian_defect()
            .ok_or_else(|| Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())))?;
        if defect > tol::HERMITIAN {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrises a square matrix without checking how far it was from
    /// Hermitian. Only for matrices that are Hermitian up to round-off by
    /// construction.
    pub(crate) fn symmetrize(m: ComplexMatrix) -> Self {
        let n = m.rows();
        let mut out = m;
        for i in 0..n {
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = (out[(i, j)] + out[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        Self(out)
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    /// `s · I_n`.
    pub fn scaled_identity(n: usize, s: f64) -> Self {
        Self(ComplexMatrix::identity(n).scale_real(s))
    }

    /// `I_n / n`, the maximally mixed state.
    pub fn maximally_mixed(n: usize) -> Self {
        Self::scaled_identity(n, 1.0 / n as f64)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    /// Rank-one projector `v v†` (not normalised).
    pub fn projector(v: &[Complex64]) -> Self {
        Self::symmetrize(ComplexMatrix::outer(v, v))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.0.checked_add(&other.0).map(Self)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.0.checked_sub(&other.0).map(Self)
    }

    /// `A ⊗ B`; the Kronecker product of Hermitian matrices is Hermitian
    /// entry for entry.
    pub fn kron(&self, other: &Self) -> Self {
        Self(tensor_product(&self.0, &other.0))
    }

    pub fn kron_all<'a, I>(factors: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a HermitianMatrix>,
    {
        let mut iter = factors.into_iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, f| acc.kron(f)))
    }

    pub fn eigen(&self) -> HermitianEigen {
        hermitian_eigen(self)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigen().values.last().expect("non-empty spectrum")
    }
}

impl AsRef<ComplexMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Hilbert–Schmidt inner product `⟨A, B⟩ = Tr(AB)`, real for Hermitian
/// arguments.
pub fn hs_inner(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    // Tr(AB) = Σ a_ij b_ji = Σ a_ij conj(b_ij)
    a.0.inner(&b.0).map(|z| z.re)
}

/// `‖A − B‖` in the norm induced by [`hs_inner`].
pub fn frobenius_distance(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    Ok(a.0.checked_sub(&b.0)?.frobenius_norm())
}

/// Spectral decomposition of a Hermitian matrix.
///
/// `values` are sorted in descending order; column `k` of `vectors` is a
/// unit eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// `Σ λ_k Φ_k Φ_k†`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        HermitianMatrix::symmetrize(out)
    }
}

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Cyclic Jacobi eigendecomposition.
///
/// Each rotation first removes the phase of `a_pq` and then applies the real
/// Jacobi rotation, so every step is unitary. Sweeps stop once the
/// off-diagonal Frobenius norm drops below `1e-12 · max(1, ‖A‖)`. Equal
/// eigenvalues keep their diagonal order (stable sort).
pub fn hermitian_eigen(h: &HermitianMatrix) -> HermitianEigen {
    let n = h.dim();
    let mut a = h.0.clone();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * h.norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    HermitianEigen { values, vectors }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s], [-s·conj(e), c·conj(e)]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    // A ← A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // A ← J† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    // V ← V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
