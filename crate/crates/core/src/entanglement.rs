//! Maximally entangled states and their distance to product states.
//!
//! For `N = n^p` the maximally entangled state `E` is the projector onto
//! `(1/√n) Σ_i |i…i⟩`. Writing a product state as
//! `A = (I/n + R_1) ⊗ … ⊗ (I/n + R_p)` with traceless `R_l`,
//! [`excess_distance_expression`] returns `‖E − A‖² − ‖E − I/N‖²` in closed
//! form. It is nonnegative for `p = 2`, so `I/N` is the closest product state
//! there; [`counterexample_factor`] gives perturbations that make it negative
//! for `p ≥ 3`.

use num_complex::Complex64;

use crate::decomposition::traceless_basis;
use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, HermitianMatrix};
use crate::matrix::ComplexMatrix;
use crate::sampling::embed_in_slot;
use crate::state::DensityMatrix;

/// Traceless tolerance for the perturbations `R_l`.
const TRACELESS_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct MaximallyEntangled {
    pub n: usize,
    pub p: usize,
    pub state: DensityMatrix,
}

/// `E` with entries `1/n` at `(i…i, j…j)` for all `i, j` and zero elsewhere.
pub fn maximally_entangled(n: usize, p: usize) -> Result<MaximallyEntangled> {
    if n < 2 || p < 2 {
        return Err(Error::InvalidArgument(format!(
            "maximally entangled state needs n >= 2 and p >= 2, got n={n}, p={p}"
        )));
    }
    let size = n.pow(p as u32);
    // flat index of |i…i⟩ is i·(1 + n + … + n^{p−1})
    let stride = (size - 1) / (n - 1);
    let mut m = ComplexMatrix::zeros(size, size);
    let v = Complex64::new(1.0 / n as f64, 0.0);
    for i in 0..n {
        for j in 0..n {
            m[(i * stride, j * stride)] = v;
        }
    }
    let state = DensityMatrix::new(HermitianMatrix::new(m)?, vec![n; p])?;
    Ok(MaximallyEntangled { n, p, state })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalityReport {
    /// Every inner product is within `tol` of zero.
    pub normal: bool,
    /// Largest `|⟨E − I/N, V⟩|` over the tangent basis.
    pub max_inner: f64,
    /// Number of tangent basis elements checked, `p·(n² − 1)`.
    pub checked: usize,
}

/// Checks that `E − I/N` is orthogonal to every tangent direction at `I/N`,
/// i.e. to `I/n ⊗ … ⊗ V ⊗ … ⊗ I/n` for each slot and each `V` in an
/// orthonormal basis of `τ₀(n)`.
pub fn normality_check(n: usize, p: usize, tol: f64) -> Result<NormalityReport> {
    let e = maximally_entangled(n, p)?;
    tangent_inner_products(e.state.matrix(), &vec![n; p], tol)
}

/// Same check for an arbitrary trace-one Hermitian matrix on `dims`.
pub fn tangent_inner_products(q: &HermitianMatrix, dims: &[usize], tol: f64) -> Result<NormalityReport> {
    let size: usize = dims.iter().product();
    if size != q.dim() {
        return Err(Error::Dims { dims: dims.to_vec(), size: q.dim() });
    }
    let shifted = q.sub(&HermitianMatrix::maximally_mixed(size))?;
    let mut max_inner = 0.0f64;
    let mut checked = 0;
    for (slot, &d) in dims.iter().enumerate() {
        for v in traceless_basis(d)? {
            let direction = embed_in_slot(&v, slot, dims);
            max_inner = max_inner.max(hs_inner(&shifted, &direction)?.abs());
            checked += 1;
        }
    }
    Ok(NormalityReport { normal: max_inner <= tol, max_inner, checked })
}

/// The perturbations `R_1, …, R_p` of a product state
/// `(I/n + R_1) ⊗ … ⊗ (I/n + R_p)` around `I/N`.
#[derive(Clone, Debug)]
pub struct FactorPerturbation {
    factors: Vec<HermitianMatrix>,
}

impl FactorPerturbation {
    pub fn new(factors: Vec<HermitianMatrix>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::InvalidArgument("at least one perturbation factor required".into()))?;
        let n = first.dim();
        for r in &factors {
            if r.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: r.dim() });
            }
            if r.trace().abs() > TRACELESS_TOL {
                return Err(Error::InvalidArgument(format!("perturbation has trace {:.3e}", r.trace())));
            }
        }
        Ok(Self { factors })
    }

    /// `p` copies of the same `R`.
    pub fn uniform(r: HermitianMatrix, p: usize) -> Result<Self> {
        Self::new(vec![r; p])
    }

    pub fn factors(&self) -> &[HermitianMatrix] {
        &self.factors
    }

    pub fn local_dim(&self) -> usize {
        self.factors[0].dim()
    }

    pub fn slots(&self) -> usize {
        self.factors.len()
    }

    /// `(I/n + R_1) ⊗ … ⊗ (I/n + R_p)`; trace one, PSD only when every
    /// factor is.
    pub fn product(&self) -> HermitianMatrix {
        let n = self.local_dim();
        let mixed = HermitianMatrix::maximally_mixed(n);
        let factors: Vec<HermitianMatrix> = self.factors.iter().map(|r| mixed.add(r).expect("equal dims")).collect();
        HermitianMatrix::kron_all(&factors).expect("at least one factor")
    }
}

/// Closed form of `‖E − A‖² − ‖E − I/N‖²` for `A = ⊗_l (I/n + R_l)`:
///
/// ```text
///   (1/n^p)     (∏_l (1 + n‖R_l‖²) − 1)
/// − (2/n^{p+1}) Σ_i (∏_l (1 + n (R_l)_ii) − 1)
/// − (2/n)       Re Σ_{i≠j} ∏_l (R_l)_ij
/// ```
///
/// Negative values mean `A` is closer to `E` than `I/N` is.
pub fn excess_distance_expression(perturbation: &FactorPerturbation, n: usize, p: usize) -> Result<f64> {
    if perturbation.local_dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: perturbation.local_dim() });
    }
    if perturbation.slots() != p {
        return Err(Error::InvalidArgument(format!("expected {p} perturbation factors, got {}", perturbation.slots())));
    }
    let nf = n as f64;
    let rs = perturbation.factors();

    let norms: f64 = rs.iter().map(|r| 1.0 + nf * r.norm_sqr()).product();
    let norm_term = (norms - 1.0) / nf.powi(p as i32);

    let diag_sum: f64 =
        (0..n).map(|i| rs.iter().map(|r| 1.0 + nf * r.as_matrix()[(i, i)].re).product::<f64>() - 1.0).sum();
    let diag_term = 2.0 * diag_sum / nf.powi(p as i32 + 1);

    let mut off_diag = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_diag += rs.iter().map(|r| r.as_matrix()[(i, j)]).product::<Complex64>().re;
            }
        }
    }
    let off_term = 2.0 * off_diag / nf;

    Ok(norm_term - diag_term - off_term)
}

/// `diag(1/(2n), −1/(2n), 0, …, 0)`.
pub fn counterexample_factor(n: usize) -> Result<HermitianMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("counterexample factor needs n >= 2, got {n}")));
    }
    let mut diag = vec![0.0; n];
    diag[0] = 0.5 / n as f64;
    diag[1] = -0.5 / n as f64;
    Ok(HermitianMatrix::from_real_diagonal(&diag))
}

/// `t·A + (1 − t)·B`.
pub fn line_point(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    a.scale(t).add(&b.scale(1.0 - t))
}
