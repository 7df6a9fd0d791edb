//! Density matrices on `C^{n_1} ⊗ … ⊗ C^{n_p}`.

use crate::error::{Error, Result};
use crate::hermitian::{frobenius_distance, HermitianMatrix};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// A Hermitian, positive semi-definite, trace-one matrix together with the
/// dimensions of its tensor slots.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates `matrix` against the default tolerances.
    pub fn new(matrix: HermitianMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, matrix.dim())?;
        check_trace(&matrix, tol::TRACE)?;
        check_psd(&matrix, tol::PSD)?;
        Ok(Self { matrix, dims })
    }

    /// Single-slot state.
    pub fn single(matrix: HermitianMatrix) -> Result<Self> {
        let n = matrix.dim();
        Self::new(matrix, vec![n])
    }

    /// For matrices that are density matrices by construction (tensor
    /// products of states, convex combinations).
    pub(crate) fn from_parts_unchecked(matrix: HermitianMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self { matrix, dims }
    }

    /// `I/N` with the given slot dimensions.
    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let n = dims.iter().product();
        check_dims(dims, n)?;
        Ok(Self { matrix: HermitianMatrix::maximally_mixed(n), dims: dims.to_vec() })
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> HermitianMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension `N = ∏ n_i`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn num_slots(&self) -> usize {
        self.dims.len()
    }

    /// `ρ ⊗ σ`, concatenating the slot signatures.
    pub fn kron(&self, other: &Self) -> Self {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Self { matrix: self.matrix.kron(&other.matrix), dims }
    }

    /// The state reduced to the `keep` slots, as a density matrix whose slot
    /// signature lists the kept dimensions in ascending slot order.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let kept = normalize_keep(keep, self.dims.len())?;
        let matrix = partial_trace(self, &kept)?;
        let dims = kept.iter().map(|&k| self.dims[k]).collect();
        Ok(Self { matrix, dims })
    }
}

fn check_dims(dims: &[usize], size: usize) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) || dims.iter().product::<usize>() != size {
        return Err(Error::Dims { dims: dims.to_vec(), size });
    }
    Ok(())
}

fn check_trace(m: &HermitianMatrix, tol: f64) -> Result<()> {
    let tr = m.trace();
    if (tr - 1.0).abs() > tol {
        return Err(Error::Trace(tr));
    }
    Ok(())
}

fn check_psd(m: &HermitianMatrix, tol: f64) -> Result<()> {
    let min = m.min_eigenvalue();
    if min < -tol {
        return Err(Error::NotPsd(min));
    }
    Ok(())
}

/// Checks that `m` is a density matrix on the slots `dims`: Hermitian,
/// trace one and positive semi-definite, each within `tol`.
pub fn validate_density(m: &ComplexMatrix, dims: &[usize], tol: f64) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    check_dims(dims, m.rows())?;
    let defect = m.hermitian_defect().unwrap_or(f64::INFINITY);
    if defect > tol.min(tol::HERMITIAN) {
        return Err(Error::NotHermitian(defect));
    }
    let matrix = HermitianMatrix::symmetrize(m.clone());
    check_trace(&matrix, tol)?;
    check_psd(&matrix, tol)?;
    Ok(DensityMatrix { matrix, dims: dims.to_vec() })
}

fn normalize_keep(keep: &[usize], slots: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidArgument("empty keep set".into()));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::InvalidArgument(format!("repeated slot in keep set {keep:?}")));
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= slots) {
        return Err(Error::InvalidArgument(format!("slot {bad} out of range for {slots} slots")));
    }
    Ok(kept)
}

/// Splits a flat index into per-slot digits, slot 0 most significant.
pub(crate) fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in dims.iter().enumerate().rev() {
        out[slot] = index % d;
        index /= d;
    }
}

/// Traces out every slot not listed in `keep` (0-based slot indices).
pub fn partial_trace(q: &DensityMatrix, keep: &[usize]) -> Result<HermitianMatrix> {
    let kept = normalize_keep(keep, q.dims.len())?;
    Ok(HermitianMatrix::symmetrize(partial_trace_raw(q.matrix.as_matrix(), &q.dims, &kept)))
}

/// Partial trace of an arbitrary square matrix; `kept` must be sorted and
/// in range.
pub(crate) fn partial_trace_raw(m: &ComplexMatrix, dims: &[usize], kept: &[usize]) -> ComplexMatrix {
    let p = dims.len();
    let n: usize = dims.iter().product();
    let mut traced_mask = vec![true; p];
    for &k in kept {
        traced_mask[k] = false;
    }
    let kept_dim: usize = kept.iter().map(|&k| dims[k]).product();
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);

    let mut rd = vec![0; p];
    let mut cd = vec![0; p];
    let flatten = |d: &[usize]| kept.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
    for r in 0..n {
        digits(r, dims, &mut rd);
        for c in 0..n {
            digits(c, dims, &mut cd);
            if (0..p).any(|s| traced_mask[s] && rd[s] != cd[s]) {
                continue;
            }
            out[(flatten(&rd), flatten(&cd))] += m[(r, c)];
        }
    }
    out
}

/// Whether `Q` equals the tensor product of its single-slot marginals to
/// within `tol` in Frobenius norm. Single-slot states are trivially
/// products.
pub fn is_product(q: &DensityMatrix, tol: f64) -> bool {
    if q.num_slots() < 2 {
        return true;
    }
    let marginals: Vec<HermitianMatrix> =
        (0..q.num_slots()).map(|s| partial_trace(q, &[s]).expect("slot in range")).collect();
    let product = HermitianMatrix::kron_all(&marginals).expect("at least one slot");
    frobenius_distance(q.matrix(), &product).is_ok_and(|d| d <= tol)
}

/// One single-slot density matrix per tensor slot.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    factors: Vec<DensityMatrix>,
}

impl ProductState {
    pub fn new(factors: Vec<DensityMatrix>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product state needs at least one factor".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.num_slots() != 1) {
            return Err(Error::InvalidArgument(format!("product factor has {} slots, expected 1", f.num_slots())));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[DensityMatrix] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(DensityMatrix::dim).collect()
    }

    /// `A₁ ⊗ … ⊗ A_p`.
    pub fn assemble(&self) -> DensityMatrix {
        let matrix =
            HermitianMatrix::kron_all(self.factors.iter().map(DensityMatrix::matrix)).expect("nonempty factor list");
        DensityMatrix::from_parts_unchecked(matrix, self.dims())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn bell() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = Complex64::new(0.5, 0.0);
        }
        validate_density(&m, &[2, 2], 1e-10).unwrap()
    }

    fn qubit(diag: [f64; 2], off: Complex64) -> DensityMatrix {
        let mut m = ComplexMatrix::from_real_diagonal(&diag);
        m[(0, 1)] = off;
        m[(1, 0)] = off.conj();
        DensityMatrix::single(HermitianMatrix::new(m).unwrap()).unwrap()
    }

    #[test]
    fn validation_accepts_states() {
        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(validate_density(&mixed, &[2, 2], 1e-10).is_ok());
        let b = bell();
        assert_eq!(b.dims(), &[2, 2]);
    }

    #[test]
    fn validation_errors() {
        let neg = ComplexMatrix::from_real_diagonal(&[1.2, -0.2, 0.0, 0.0]);
        assert!(matches!(validate_density(&neg, &[2, 2], 1e-10), Err(Error::NotPsd(_))));

        let half = ComplexMatrix::identity(4).scale_real(0.5);
        assert!(matches!(validate_density(&half, &[2, 2], 1e-10), Err(Error::Trace(_))));

        let mut skew = ComplexMatrix::identity(2).scale_real(0.5);
        skew[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(validate_density(&skew, &[2], 1e-10), Err(Error::NotHermitian(_))));

        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(validate_density(&mixed, &[2, 3], 1e-10), Err(Error::Dims { .. })));
        assert!(matches!(validate_density(&mixed, &[4, 1], 1e-10), Err(Error::Dims { .. })));
        assert!(matches!(validate_density(&mixed, &[], 1e-10), Err(Error::Dims { .. })));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = qubit([0.7, 0.3], Complex64::new(0.1, -0.2));
        let b = DensityMatrix::single(HermitianMatrix::from_real_diagonal(&[0.2, 0.5, 0.3])).unwrap();
        let ab = a.kron(&b);
        let ra = partial_trace(&ab, &[0]).unwrap();
        assert!(ra.as_matrix().max_abs_diff(a.matrix().as_matrix()).unwrap() < 1e-15);
        let rb = partial_trace(&ab, &[1]).unwrap();
        assert!(rb.as_matrix().max_abs_diff(b.matrix().as_matrix()).unwrap() < 1e-15);
        let all = partial_trace(&ab, &[1, 0]).unwrap();
        assert_eq!(&all, ab.matrix());
    }

    #[test]
    fn partial_trace_of_bell_is_mixed() {
        let r = partial_trace(&bell(), &[0]).unwrap();
        assert_eq!(r, HermitianMatrix::maximally_mixed(2));
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let b = bell();
        assert!(partial_trace(&b, &[]).is_err());
        assert!(partial_trace(&b, &[2]).is_err());
        assert!(partial_trace(&b, &[0, 0]).is_err());
    }

    #[test]
    fn partial_trace_middle_slot() {
        let a = qubit([0.6, 0.4], Complex64::new(0.0, 0.1));
        let b = DensityMatrix::single(HermitianMatrix::from_real_diagonal(&[0.2, 0.5, 0.3])).unwrap();
        let c = qubit([0.9, 0.1], Complex64::new(0.2, 0.0));
        let abc = a.kron(&b).kron(&c);
        let ac = abc.reduce(&[0, 2]).unwrap();
        assert_eq!(ac.dims(), &[2, 2]);
        let expected = a.kron(&c);
        assert!(ac.matrix().as_matrix().max_abs_diff(expected.matrix().as_matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn product_detection() {
        let a = qubit([0.7, 0.3], Complex64::new(0.1, -0.2));
        let b = qubit([0.4, 0.6], Complex64::new(-0.3, 0.1));
        assert!(is_product(&a.kron(&b), 1e-10));
        assert!(!is_product(&bell(), 1e-6));

        let mixture = a.kron(&b).matrix().scale(0.5).add(&b.kron(&a).matrix().scale(0.5)).unwrap();
        let mixture = DensityMatrix::new(mixture, vec![2, 2]).unwrap();
        assert!(!is_product(&mixture, 1e-6));
    }

    #[test]
    fn product_state_assembly() {
        let a = qubit([0.7, 0.3], Complex64::new(0.1, -0.2));
        let b = qubit([0.4, 0.6], Complex64::new(-0.3, 0.1));
        let ps = ProductState::new(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(ps.assemble(), a.kron(&b));
        assert!(ProductState::new(vec![a.kron(&b)]).is_err());
        assert!(ProductState::new(vec![]).is_err());
    }
}
