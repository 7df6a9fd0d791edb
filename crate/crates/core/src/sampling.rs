//! Random test states.
//!
//! Used by the property tests, the acceptance suite and the CLI `verify`
//! command. All samplers take the RNG explicitly so runs are reproducible
//! from a seed.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::hermitian::HermitianMatrix;
use crate::matrix::ComplexMatrix;
use crate::state::{DensityMatrix, ProductState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `n×n` matrix with i.i.d. complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("positive shape")
}

/// `(G + G†)/2` for a Ginibre `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let g = ginibre(n, n, rng);
    HermitianMatrix::symmetrize((&g + &g.adjoint()).scale_real(0.5))
}

/// Random traceless Hermitian matrix.
pub fn random_traceless<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let h = random_hermitian(n, rng);
    let shift = HermitianMatrix::scaled_identity(n, h.trace() / n as f64);
    h.sub(&shift).expect("equal dims")
}

/// `G G† / Tr(G G†)` with `G` an `N×rank` Ginibre matrix; full rank when
/// `rank ≥ N`.
pub fn random_state_with_rank<R: Rng + ?Sized>(dims: &[usize], rank: usize, rng: &mut R) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ginibre(n, rank.max(1), rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let m = HermitianMatrix::symmetrize(gg.scale_real(1.0 / tr));
    DensityMatrix::new(m, dims.to_vec()).expect("Wishart matrices are density matrices")
}

/// Full-rank random density matrix on the given slots.
pub fn random_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityMatrix {
    let n = dims.iter().product();
    random_state_with_rank(dims, n, rng)
}

/// Random product state; each factor's rank is drawn uniformly so pure
/// and boundary factors show up too.
pub fn random_product_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> ProductState {
    let factors = dims
        .iter()
        .map(|&d| {
            let rank = rng.random_range(1..=d);
            random_state_with_rank(&[d], rank, rng)
        })
        .collect();
    ProductState::new(factors).expect("single-slot factors")
}

/// Random traceless `R` with smallest eigenvalue in `[−1/(2n), 0]`, so
/// `I/n + R` is positive definite with margin.
pub fn psd_compatible_perturbation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let r = random_traceless(n, rng);
    let lowest = r.min_eigenvalue();
    if lowest >= 0.0 {
        return HermitianMatrix::zeros(n);
    }
    let scale: f64 = rng.random_range(0.0..=1.0);
    r.scale(scale / (2.0 * n as f64 * lowest.abs()))
}

/// Random state in the set tangent to the product manifold at `I/N`:
/// `I/N + s Σ_i (I/n_1 ⊗ … ⊗ H_i ⊗ … ⊗ I/n_p)` with traceless `H_i` and
/// `s` small enough that the result is positive semi-definite.
pub fn random_tangent_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let hs: Vec<HermitianMatrix> = dims.iter().map(|&d| random_traceless(d, rng)).collect();
    // min eigenvalue of I/N + s·ΣH-terms is (1 + s Σ n_i μ_i)/N
    let budget: f64 = dims.iter().zip(&hs).map(|(&d, h)| d as f64 * h.min_eigenvalue().abs()).sum();
    let s = rng.random_range(0.05..=1.0) / budget;
    let mut q = HermitianMatrix::maximally_mixed(n);
    for (slot, h) in hs.iter().enumerate() {
        let term = embed_in_slot(&h.scale(s), slot, dims);
        q = q.add(&term).expect("equal dims");
    }
    DensityMatrix::new(q, dims.to_vec()).expect("tangent construction stays PSD")
}

/// `I/n_1 ⊗ … ⊗ H ⊗ … ⊗ I/n_p` with `H` in `slot`.
pub fn embed_in_slot(h: &HermitianMatrix, slot: usize, dims: &[usize]) -> HermitianMatrix {
    let factors: Vec<HermitianMatrix> = dims
        .iter()
        .enumerate()
        .map(|(j, &d)| if j == slot { h.clone() } else { HermitianMatrix::maximally_mixed(d) })
        .collect();
    HermitianMatrix::kron_all(&factors).expect("nonempty dims")
}
