//! Canonical orthogonal decomposition of trace-one Hermitian matrices.
//!
//! With `N = n_1 ⋯ n_p`, every trace-zero Hermitian `N×N` matrix splits
//! orthogonally over the subspaces `ν(α)`, one for each nonzero binary
//! string `α ∈ {0,1}^p`. `ν(α)` is the tensor product whose slot `j` is the
//! line through `I/n_j` when `α_j = 0` and the traceless Hermitian matrices
//! `τ₀(n_j)` when `α_j = 1`. A state therefore reads
//!
//! ```text
//! Q = I/N + Σ_{|α|=1} B(α) + Σ_{|α|≥2} B(α) = I/N + Q_T + Q_N
//! ```
//!
//! where `Q_T` is the part tangent to the product manifold at `I/N` and `Q_N`
//! the part normal to it.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, HermitianMatrix};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;

/// Default threshold on `‖Q_T‖` and `‖Q_N‖` used by [`classify`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// HS-orthonormal basis of `τ₀(n)` (generalised Gell-Mann matrices).
///
/// Order: symmetric pairs `(E_jk + E_kj)/√2` for `j < k` in lexicographic
/// order, then antisymmetric pairs `i(E_kj − E_jk)/√2` in the same order,
/// then the diagonal ladder `(E_00 + … + E_{l-1,l-1} − l·E_ll)/√(l(l+1))`
/// for `l = 1, …, n−1`. For `n = 2` this is `σx/√2, σy/√2, σz/√2`.
pub fn traceless_basis(n: usize) -> Result<Vec<HermitianMatrix>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("traceless basis needs n >= 2, got {n}")));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = ComplexMatrix::zeros(n, n);
            m[(j, k)] = Complex64::new(r, 0.0);
            m[(k, j)] = Complex64::new(r, 0.0);
            basis.push(HermitianMatrix::symmetrize(m));
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = ComplexMatrix::zeros(n, n);
            m[(j, k)] = Complex64::new(0.0, -r);
            m[(k, j)] = Complex64::new(0.0, r);
            basis.push(HermitianMatrix::symmetrize(m));
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![0.0; n];
        diag[..l].fill(norm);
        diag[l] = -(l as f64) * norm;
        basis.push(HermitianMatrix::from_real_diagonal(&diag));
    }
    Ok(basis)
}

/// A binary string `α = (α_1, …, α_p)` selecting which slots carry a
/// traceless factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaIndex {
    bits: Vec<bool>,
}

impl AlphaIndex {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Reads `value` as a `p`-bit string, most significant bit in slot 0.
    pub fn from_integer(value: usize, p: usize) -> Self {
        Self { bits: (0..p).map(|slot| (value >> (p - 1 - slot)) & 1 == 1).collect() }
    }

    /// All nonzero indices for `p` slots in the order `1, 2, …, 2^p − 1`.
    pub fn all_nonzero(p: usize) -> impl Iterator<Item = AlphaIndex> {
        (1..(1usize << p)).map(move |v| Self::from_integer(v, p))
    }

    /// The index with a single one in `slot`.
    pub fn single(slot: usize, p: usize) -> Self {
        let mut bits = vec![false; p];
        bits[slot] = true;
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `|α|`, the number of ones.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for AlphaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `Q = base + Σ_α B(α)` with `base = (Tr Q / N)·I`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    dims: Vec<usize>,
    base: HermitianMatrix,
    components: Vec<(AlphaIndex, HermitianMatrix)>,
}

impl Decomposition {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn base(&self) -> &HermitianMatrix {
        &self.base
    }

    /// Components in the order of [`AlphaIndex::all_nonzero`].
    pub fn components(&self) -> &[(AlphaIndex, HermitianMatrix)] {
        &self.components
    }

    pub fn component(&self, alpha: &AlphaIndex) -> Option<&HermitianMatrix> {
        self.components.iter().find(|(a, _)| a == alpha).map(|(_, m)| m)
    }

    fn sum_where(&self, pred: impl Fn(usize) -> bool) -> HermitianMatrix {
        let n = self.base.dim();
        self.components
            .iter()
            .filter(|(a, _)| pred(a.weight()))
            .fold(HermitianMatrix::zeros(n), |acc, (_, m)| acc.add(m).expect("equal dims"))
    }

    /// `Q_T = Σ_{|α|=1} B(α)`.
    pub fn tangent(&self) -> HermitianMatrix {
        self.sum_where(|w| w == 1)
    }

    /// `Q_N = Σ_{|α|≥2} B(α)`.
    pub fn normal(&self) -> HermitianMatrix {
        self.sum_where(|w| w >= 2)
    }

    /// `base + Σ_α B(α)`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.base.add(&self.sum_where(|_| true)).expect("equal dims")
    }
}

/// Decomposes a state over the subspaces `ν(α)`.
pub fn decompose(q: &DensityMatrix) -> Decomposition {
    decompose_operator(q.matrix(), q.dims()).expect("density matrix dims are consistent")
}

/// Decomposes any Hermitian operator on the given slots. The `I` term
/// carries `Tr H / N`.
pub fn decompose_operator(h: &HermitianMatrix, dims: &[usize]) -> Result<Decomposition> {
    let n: usize = dims.iter().product();
    if dims.is_empty() || dims.iter().any(|&d| d < 2) || n != h.dim() {
        return Err(Error::Dims { dims: dims.to_vec(), size: h.dim() });
    }
    let p = dims.len();
    let bases: Vec<Vec<HermitianMatrix>> = dims.iter().map(|&d| traceless_basis(d)).collect::<Result<_>>()?;
    let units: Vec<HermitianMatrix> =
        dims.iter().map(|&d| HermitianMatrix::scaled_identity(d, 1.0 / (d as f64).sqrt())).collect();

    let components = AlphaIndex::all_nonzero(p)
        .map(|alpha| {
            let slot_sets: Vec<&[HermitianMatrix]> = (0..p)
                .map(|j| if alpha.bits()[j] { bases[j].as_slice() } else { std::slice::from_ref(&units[j]) })
                .collect();
            let mut component = ComplexMatrix::zeros(n, n);
            for_each_product(&slot_sets, |v| {
                let coef = hs_inner(h, v).expect("equal dims");
                if coef != 0.0 {
                    component = &component + &v.as_matrix().scale_real(coef);
                }
            });
            (alpha, HermitianMatrix::symmetrize(component))
        })
        .collect();

    Ok(Decomposition {
        dims: dims.to_vec(),
        base: HermitianMatrix::scaled_identity(n, h.trace() / n as f64),
        components,
    })
}

/// Calls `f` on every tensor product `V_1 ⊗ … ⊗ V_p` with `V_j` drawn from
/// `slot_sets[j]`.
fn for_each_product(slot_sets: &[&[HermitianMatrix]], mut f: impl FnMut(&HermitianMatrix)) {
    let mut choice = vec![0usize; slot_sets.len()];
    loop {
        let product = HermitianMatrix::kron_all(choice.iter().zip(slot_sets).map(|(&c, set)| &set[c]))
            .expect("at least one slot");
        f(&product);
        // odometer increment, last slot fastest
        let mut slot = slot_sets.len();
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < slot_sets[slot].len() {
                break;
            }
            choice[slot] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateClass {
    /// `Q_N = 0`, `Q_T ≠ 0`.
    TangentSet,
    /// `Q_T = 0`, `Q_N ≠ 0`.
    NormalSet,
    /// `Q = I/N`.
    Center,
    Generic,
}

impl StateClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StateClass::TangentSet => "tangent_set",
            StateClass::NormalSet => "normal_set",
            StateClass::Center => "center",
            StateClass::Generic => "generic",
        }
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub class: StateClass,
    /// `‖Q_T‖`
    pub tangent_norm: f64,
    /// `‖Q_N‖`
    pub normal_norm: f64,
}

pub fn classify(q: &DensityMatrix, tol: f64) -> Classification {
    classify_decomposition(&decompose(q), tol)
}

pub fn classify_decomposition(d: &Decomposition, tol: f64) -> Classification {
    let tangent_norm = d.tangent().norm();
    let normal_norm = d.normal().norm();
    let class = match (tangent_norm <= tol, normal_norm <= tol) {
        (true, true) => StateClass::Center,
        (false, true) => StateClass::TangentSet,
        (true, false) => StateClass::NormalSet,
        (false, false) => StateClass::Generic,
    };
    Classification { class, tangent_norm, normal_norm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::validate_density;

    fn bell() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = Complex64::new(0.5, 0.0);
        }
        validate_density(&m, &[2, 2], 1e-10).unwrap()
    }

    fn gram_defect(basis: &[HermitianMatrix]) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((hs_inner(a, b).unwrap() - want).abs());
            }
        }
        worst
    }

    #[test]
    fn qubit_basis_is_normalized_paulis() {
        let b = traceless_basis(2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let x = ComplexMatrix::from_real_rows(&[&[0.0, r], &[r, 0.0]]).unwrap();
        let mut y = ComplexMatrix::zeros(2, 2);
        y[(0, 1)] = Complex64::new(0.0, -r);
        y[(1, 0)] = Complex64::new(0.0, r);
        let z = ComplexMatrix::from_real_diagonal(&[r, -r]);
        assert_eq!(b.len(), 3);
        assert!(b[0].as_matrix().max_abs_diff(&x).unwrap() < 1e-15);
        assert!(b[1].as_matrix().max_abs_diff(&y).unwrap() < 1e-15);
        assert!(b[2].as_matrix().max_abs_diff(&z).unwrap() < 1e-15);
    }

    #[test]
    fn bases_are_orthonormal_and_traceless() {
        for n in 2..=5 {
            let b = traceless_basis(n).unwrap();
            assert_eq!(b.len(), n * n - 1);
            assert!(gram_defect(&b) < 1e-12, "n = {n}");
            assert!(b.iter().all(|m| m.trace().abs() < 1e-14));
        }
        assert!(traceless_basis(1).is_err());
    }

    #[test]
    fn alpha_order_and_counts() {
        let order: Vec<String> = AlphaIndex::all_nonzero(2).map(|a| a.to_string()).collect();
        assert_eq!(order, ["01", "10", "11"]);
        for p in 1..=5 {
            let mut counts = vec![0usize; p + 1];
            for a in AlphaIndex::all_nonzero(p) {
                counts[a.weight()] += 1;
            }
            let mut binom = 1usize;
            for (k, &count) in counts.iter().enumerate().skip(1) {
                binom = binom * (p - k + 1) / k;
                assert_eq!(count, binom);
            }
        }
    }

    #[test]
    fn center_has_no_components() {
        let q = DensityMatrix::maximally_mixed(&[2, 3]).unwrap();
        let d = decompose(&q);
        assert!(d.components().iter().all(|(_, m)| m.norm() < 1e-15));
        assert_eq!(classify(&q, DEFAULT_CLASSIFY_TOL).class, StateClass::Center);
    }

    #[test]
    fn bell_is_normal() {
        let q = bell();
        let d = decompose(&q);
        assert!(d.component(&AlphaIndex::single(0, 2)).unwrap().norm() < 1e-15);
        assert!(d.component(&AlphaIndex::single(1, 2)).unwrap().norm() < 1e-15);
        let b11 = d.component(&AlphaIndex::new(vec![true, true])).unwrap();
        let expected = q.matrix().sub(&HermitianMatrix::maximally_mixed(4)).unwrap();
        assert!(b11.as_matrix().max_abs_diff(expected.as_matrix()).unwrap() < 1e-15);
        assert!((b11.norm_sqr() - 0.75).abs() < 1e-14);
        assert_eq!(classify(&q, DEFAULT_CLASSIFY_TOL).class, StateClass::NormalSet);
    }

    #[test]
    fn tangent_example() {
        let h = HermitianMatrix::from_real_diagonal(&[0.125, -0.125]).kron(&HermitianMatrix::maximally_mixed(2));
        let q = HermitianMatrix::maximally_mixed(4).add(&h).unwrap();
        let q = DensityMatrix::new(q, vec![2, 2]).unwrap();
        let c = classify(&q, DEFAULT_CLASSIFY_TOL);
        assert_eq!(c.class, StateClass::TangentSet);
        assert!((c.tangent_norm - h.norm()).abs() < 1e-15);
    }

    #[test]
    fn product_state_components() {
        let a = HermitianMatrix::from_real_diagonal(&[0.8, 0.2]);
        let b = HermitianMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]);
        let q = DensityMatrix::new(a.kron(&b), vec![2, 3]).unwrap();
        let d = decompose(&q);
        let ra = a.sub(&HermitianMatrix::maximally_mixed(2)).unwrap();
        let rb = b.sub(&HermitianMatrix::maximally_mixed(3)).unwrap();
        let want = [
            ("01", HermitianMatrix::maximally_mixed(2).kron(&rb)),
            ("10", ra.kron(&HermitianMatrix::maximally_mixed(3))),
            ("11", ra.kron(&rb)),
        ];
        for ((alpha, got), (label, expected)) in d.components().iter().zip(&want) {
            assert_eq!(&alpha.to_string(), label);
            assert!(got.as_matrix().max_abs_diff(expected.as_matrix()).unwrap() < 1e-14);
        }
    }
}
