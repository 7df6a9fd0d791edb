//! Geometry of product states on `C^{n_1} ⊗ … ⊗ C^{n_p}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`matrix`]: dense complex matrices, Kronecker products, the slot-swap
//!   transform and block access.
//! - [`hermitian`]: Hermitian matrices, the Hilbert–Schmidt geometry and a
//!   cyclic Jacobi eigensolver.
//! - [`state`]: density matrices with a tensor-slot signature, partial traces
//!   and product-state tests.
//! - [`decomposition`]: the orthogonal split of `τ₀(N)` into the subspaces
//!   `ν(α)`, and the tangent/normal classification at `I/N`.
//! - [`separability`]: explicit separable certificates for states in the set
//!   tangent to the product manifold at `I/N`.
//! - [`entanglement`]: maximally entangled states and their distance to
//!   product states.
//! - [`solver`]: alternating minimisation of `‖C − A⊗B‖` over bipartite
//!   product density matrices.
//!
//! Slots are numbered from 0 in the API. Row and column indices of a tensor
//! product use the row-major Kronecker convention: slot 0 is the most
//! significant digit.

#![forbid(unsafe_code)]

pub mod decomposition;
pub mod entanglement;
pub mod error;
pub mod hermitian;
pub mod matrix;
pub mod sampling;
pub mod separability;
pub mod solver;
pub mod state;

pub use num_complex::Complex64;

pub use decomposition::{classify, decompose, traceless_basis, AlphaIndex, Classification, Decomposition, StateClass};
pub use entanglement::{
    counterexample_factor, excess_distance_expression, line_point, maximally_entangled, normality_check,
    FactorPerturbation, MaximallyEntangled, NormalityReport,
};
pub use error::{Error, Result};
pub use hermitian::{frobenius_distance, hermitian_eigen, hs_inner, HermitianEigen, HermitianMatrix};
pub use matrix::{block, swap_transform, tensor_product, ComplexMatrix};
pub use separability::{tangent_separable_decomposition, SeparableDecomposition};
pub use solver::{
    closest_product, psd_boundary_candidates, trace_correction, unconstrained_factor_update, BoundaryCandidate,
    SolverOptions, SolverOutcome,
};
pub use state::{is_product, partial_trace, validate_density, DensityMatrix, ProductState};

/// Tolerances shared by the validating constructors.
pub mod tol {
    /// Maximum `|A_ij − conj(A_ji)|` accepted by [`HermitianMatrix`](crate::HermitianMatrix).
    pub const HERMITIAN: f64 = 1e-10;
    /// Maximum `|Tr ρ − 1|` for a density matrix.
    pub const TRACE: f64 = 1e-10;
    /// Most negative eigenvalue accepted for a positive semi-definite matrix.
    pub const PSD: f64 = 1e-10;
}
