//! Explicit separable decompositions for states tangent to the product
//! manifold at `I/N`.
//!
//! Such a state has the form `Q = I/N + Σ_i I/n_1 ⊗ … ⊗ H_i ⊗ … ⊗ I/n_p`.
//! With `μ_i` the smallest eigenvalue of the traceless `H_i` and
//! `F_i = H_i / (n_i |μ_i|)`, `Q` is the convex combination
//!
//! ```text
//! (1 − Σ n_i|μ_i|) · I/N + Σ n_i|μ_i| · (I/n_1 ⊗ … ⊗ (I/n_i + F_i) ⊗ … ⊗ I/n_p)
//! ```
//!
//! and every term is a product of density matrices because the most
//! negative eigenvalue of `F_i` is `−1/n_i`. The weight on `I/N` equals
//! `N · λ_min(Q)`, so it is nonnegative exactly when `Q` is PSD.

use crate::decomposition::{classify_decomposition, decompose, AlphaIndex};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::state::{partial_trace_raw, DensityMatrix, ProductState};

/// A center weight within this of zero is dropped and the rest renormalised.
const WEIGHT_CLIP: f64 = 1e-12;
/// `H_i` with smallest eigenvalue above `−ZERO_SLOT` contributes no term.
const ZERO_SLOT: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SeparableDecomposition {
    pub weights: Vec<f64>,
    pub terms: Vec<ProductState>,
    /// `‖Σ w_i T_i − Q‖`
    pub residual: f64,
}

impl SeparableDecomposition {
    /// `Σ w_i · assemble(term_i)`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.terms[0].assemble().dim();
        self.weights.iter().zip(&self.terms).fold(HermitianMatrix::zeros(n), |acc, (&w, t)| {
            acc.add(&t.assemble().matrix().scale(w)).expect("equal dims")
        })
    }
}

/// Builds the separable certificate for a state in the tangent set (or the
/// center `I/N`).
///
/// Fails with [`Error::NotTangent`] when `‖Q_N‖ > tol`, and with
/// [`Error::Consistency`] when the weight on `I/N` comes out negative beyond
/// round-off, which only happens for inputs that are not PSD.
pub fn tangent_separable_decomposition(q: &DensityMatrix, tol: f64) -> Result<SeparableDecomposition> {
    let d = decompose(q);
    let class = classify_decomposition(&d, tol);
    if class.normal_norm > tol {
        return Err(Error::NotTangent(class.normal_norm));
    }
    let dims = q.dims();
    let p = dims.len();
    let mixed: Vec<DensityMatrix> = dims
        .iter()
        .map(|&n| DensityMatrix::from_parts_unchecked(HermitianMatrix::maximally_mixed(n), vec![n]))
        .collect();

    let mut slot_terms = Vec::new();
    for (slot, &n) in dims.iter().enumerate() {
        let component = d.component(&AlphaIndex::single(slot, p)).expect("all single-slot indices present");
        // tracing out the I/n_j factors (each of trace one) leaves H_i
        let h = HermitianMatrix::symmetrize(partial_trace_raw(component.as_matrix(), dims, &[slot]));
        let mu = h.min_eigenvalue();
        if mu > -ZERO_SLOT {
            continue;
        }
        let weight = n as f64 * mu.abs();
        let factor = HermitianMatrix::maximally_mixed(n).add(&h.scale(1.0 / weight)).expect("equal dims");
        let mut factors = mixed.clone();
        factors[slot] = DensityMatrix::from_parts_unchecked(factor, vec![n]);
        slot_terms.push((weight, ProductState::new(factors)?));
    }

    let center_weight = 1.0 - slot_terms.iter().map(|(w, _)| w).sum::<f64>();
    if center_weight < -WEIGHT_CLIP {
        return Err(Error::Consistency(format!(
            "weight on I/N is {center_weight:.3e}; input is not positive semi-definite"
        )));
    }

    let mut weights = Vec::with_capacity(slot_terms.len() + 1);
    let mut terms = Vec::with_capacity(slot_terms.len() + 1);
    if center_weight > WEIGHT_CLIP {
        weights.push(center_weight);
        terms.push(ProductState::new(mixed)?);
    }
    for (w, t) in slot_terms {
        weights.push(w);
        terms.push(t);
    }
    let total: f64 = weights.iter().sum();
    if center_weight <= WEIGHT_CLIP && total != 1.0 {
        for w in &mut weights {
            *w /= total;
        }
    }

    let mut out = SeparableDecomposition { weights, terms, residual: 0.0 };
    out.residual = out.reconstruct().sub(q.matrix()).expect("equal dims").norm();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::embed_in_slot;
    use crate::state::is_product;

    fn tangent_state(hs: &[HermitianMatrix], dims: &[usize]) -> DensityMatrix {
        let n = dims.iter().product();
        let mut q = HermitianMatrix::maximally_mixed(n);
        for (slot, h) in hs.iter().enumerate() {
            q = q.add(&embed_in_slot(h, slot, dims)).unwrap();
        }
        DensityMatrix::new(q, dims.to_vec()).unwrap()
    }

    #[test]
    fn single_slot_example() {
        let h1 = HermitianMatrix::from_real_diagonal(&[0.125, -0.125]);
        let q = tangent_state(&[h1, HermitianMatrix::zeros(2)], &[2, 2]);
        let sep = tangent_separable_decomposition(&q, 1e-9).unwrap();
        assert_eq!(sep.weights.len(), 2);
        assert!((sep.weights[0] - 0.75).abs() < 1e-15);
        assert!((sep.weights[1] - 0.25).abs() < 1e-15);
        assert_eq!(sep.terms[0].assemble().matrix(), &HermitianMatrix::maximally_mixed(4));
        let expected = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]).kron(&HermitianMatrix::maximally_mixed(2));
        assert!(sep.terms[1].assemble().matrix().sub(&expected).unwrap().norm() < 1e-15);
        let want = HermitianMatrix::from_real_diagonal(&[5.0 / 16.0, 5.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0]);
        assert!(sep.reconstruct().sub(&want).unwrap().norm() < 1e-15);
        assert!(sep.residual < 1e-15);
    }

    #[test]
    fn center_is_a_single_term() {
        let q = DensityMatrix::maximally_mixed(&[2, 3]).unwrap();
        let sep = tangent_separable_decomposition(&q, 1e-9).unwrap();
        assert_eq!(sep.weights, vec![1.0]);
        assert_eq!(sep.terms.len(), 1);
        assert_eq!(sep.residual, 0.0);
    }

    #[test]
    fn two_slot_example() {
        let h = HermitianMatrix::from_real_diagonal(&[1.0 / 16.0, -1.0 / 16.0]);
        let q = tangent_state(&[h.clone(), h], &[2, 2]);
        let sep = tangent_separable_decomposition(&q, 1e-9).unwrap();
        let want = [0.75, 0.125, 0.125];
        assert_eq!(sep.weights.len(), 3);
        for (w, e) in sep.weights.iter().zip(want) {
            assert!((w - e).abs() < 1e-15);
        }
        assert!(sep.residual < 1e-12);
        assert!(sep.terms.iter().all(|t| is_product(&t.assemble(), 1e-12)));
    }

    #[test]
    fn boundary_state_has_no_center_term() {
        // smallest eigenvalue of Q is exactly zero
        let h = HermitianMatrix::from_real_diagonal(&[0.5, -0.5]);
        let q = tangent_state(&[h, HermitianMatrix::zeros(2)], &[2, 2]);
        let sep = tangent_separable_decomposition(&q, 1e-9).unwrap();
        assert_eq!(sep.weights, vec![1.0]);
        assert!(sep.residual < 1e-15);
    }

    #[test]
    fn rejects_entangled_and_generic_states() {
        let mut m = crate::matrix::ComplexMatrix::zeros(4, 4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = num_complex::Complex64::new(0.5, 0.0);
        }
        let bell = crate::state::validate_density(&m, &[2, 2], 1e-10).unwrap();
        assert!(matches!(tangent_separable_decomposition(&bell, 1e-9), Err(Error::NotTangent(_))));
    }

    #[test]
    fn non_psd_input_is_a_consistency_error() {
        // trace-one and Hermitian but with a negative eigenvalue; bypasses validation
        let h = HermitianMatrix::from_real_diagonal(&[0.75, -0.75]);
        let dims = [2, 2];
        let q = HermitianMatrix::maximally_mixed(4).add(&embed_in_slot(&h, 0, &dims)).unwrap();
        let q = DensityMatrix::from_parts_unchecked(q, dims.to_vec());
        assert!(matches!(tangent_separable_decomposition(&q, 1e-9), Err(Error::Consistency(_))));
    }
}
