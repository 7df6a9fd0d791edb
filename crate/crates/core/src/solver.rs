//! Closest bipartite product state by alternating minimisation.
//!
//! Given a density matrix `C` on `C^n ⊗ C^m`, find density matrices `A`
//! (`n×n`) and `B` (`m×m`) minimising `‖C − A⊗B‖`. With `B` fixed the
//! objective splits over the `m×m` blocks of `C`,
//!
//! ```text
//! ‖C − A⊗B‖² = Σ_ij ‖C_ij − a_ij B‖²,
//! ```
//!
//! so the unconstrained minimiser is `a_ij = Tr(C_ij B†)/‖B‖²`. The trace
//! constraint adds a multiple of the identity. If the result is not PSD the
//! minimiser lies on the boundary, and the candidates are the singular
//! trace-one matrices `A_o + γ₁ I + γ₂ Φ_m Φ_m†` built from the eigenpairs
//! of `A_o`. The `B` update is the same computation applied to the
//! slot-swapped matrix `T(C)`, since `‖C − A⊗B‖ = ‖T(C) − B⊗A‖`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hermitian::{frobenius_distance, HermitianMatrix};
use crate::matrix::{block, swap_transform, ComplexMatrix};
use crate::sampling::random_state_with_rank;
use crate::state::DensityMatrix;
use crate::tol;

/// Slack on the admissibility inequalities of a boundary candidate.
const ADMISSIBILITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Stop once a full iteration changes the objective by less than this.
    pub tol: f64,
    pub max_iter: usize,
    /// Search singular candidates when the trace-corrected update is not
    /// PSD. When disabled such an update is an error.
    pub boundary_enabled: bool,
    /// Number of starts. Start 0 uses `B = I/m`; later starts draw a random
    /// `B` from `seed`.
    pub starts: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 500, boundary_enabled: true, starts: 1, seed: 0 }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(Error::InvalidArgument("starts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SolverOutcome {
    pub a: DensityMatrix,
    pub b: DensityMatrix,
    /// `‖C − A⊗B‖`
    pub distance: f64,
    /// Full (A then B) iterations performed by the winning start.
    pub iterations: usize,
    /// Objective after every half-step of the winning start.
    pub objective_trace: Vec<f64>,
    /// Whether the matching half-step needed a boundary candidate.
    pub boundary_steps: Vec<bool>,
    pub converged: bool,
    pub boundary_corrections: usize,
    /// Index of the start that produced this outcome.
    pub start: usize,
    /// Starts abandoned because no boundary candidate was admissible.
    pub discarded_starts: usize,
}

impl SolverOutcome {
    /// Largest objective increase over a half-step that did not use a
    /// boundary candidate; zero when the trace is monotone.
    pub fn max_ascent(&self) -> f64 {
        self.objective_trace
            .windows(2)
            .zip(self.boundary_steps.iter().skip(1))
            .filter(|(_, &corrected)| !corrected)
            .map(|(w, _)| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

fn bipartite_dims(c: &DensityMatrix) -> Result<(usize, usize)> {
    match *c.dims() {
        [n, m] => Ok((n, m)),
        ref dims => {
            Err(Error::InvalidArgument(format!("closest product solver is bipartite; got {} slots", dims.len())))
        }
    }
}

/// The Hermitian `A_o` minimising `‖C − A⊗B‖` with no trace or positivity
/// constraint: `a_ij = Tr(C_ij B†)/‖B‖²`, with the diagonal taken as the real
/// part.
pub fn unconstrained_factor_update(c: &DensityMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    let (n, m) = bipartite_dims(c)?;
    if b.dim() != m {
        return Err(Error::DimensionMismatch { left: m, right: b.dim() });
    }
    let norm_sqr = b.norm_sqr();
    if norm_sqr.is_nan() || norm_sqr <= f64::MIN_POSITIVE {
        return Err(Error::DegenerateFactor(norm_sqr.sqrt()));
    }
    let cm = c.matrix().as_matrix();
    let bm = b.as_matrix();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let cij = block(cm, i, j, n, m)?;
            let t = cij.inner(bm)? / norm_sqr;
            if i == j {
                a[(i, i)] = Complex64::new(t.re, 0.0);
            } else {
                a[(i, j)] = t;
                a[(j, i)] = t.conj();
            }
        }
    }
    Ok(HermitianMatrix::symmetrize(a))
}

/// `A_o + (1/n)(1 − Tr A_o)·I`, the trace-one minimiser.
pub fn trace_correction(a_o: &HermitianMatrix) -> HermitianMatrix {
    let n = a_o.dim();
    let shift = (1.0 - a_o.trace()) / n as f64;
    a_o.add(&HermitianMatrix::scaled_identity(n, shift)).expect("equal dims")
}

/// A singular trace-one candidate built from eigenpair `index` of `A_o`.
#[derive(Clone, Debug)]
pub struct BoundaryCandidate {
    /// Position of the eigenpair in descending eigenvalue order (0-based).
    pub index: usize,
    pub eigenvalue: f64,
    pub eigenvector: Vec<Complex64>,
    pub matrix: HermitianMatrix,
}

/// Singular trace-one candidates for the positivity-constrained update.
///
/// With eigenpairs `(λ_k, Φ_k)` of `A_o` in descending order and
/// `s = 1 − Tr A_o`, the candidate for `k` is
///
/// ```text
/// A_k = A_o + (s + λ_k)/(n−1) · I − (s + n·λ_k)/(n−1) · Φ_k Φ_k†
/// ```
///
/// which has trace one and `A_k Φ_k = 0`. Its other eigenvalues are
/// `((n−1)λ_j + λ_k + s)/(n−1)`; a candidate is kept only when all of them
/// are nonnegative. Returns [`Error::NoBoundarySolution`] if none is.
pub fn psd_boundary_candidates(a_o: &HermitianMatrix) -> Result<Vec<BoundaryCandidate>> {
    let n = a_o.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("boundary candidates need n >= 2".into()));
    }
    let nf = n as f64;
    let slack = 1.0 - a_o.trace();
    let eig = a_o.eigen();
    let mut out = Vec::new();
    for (k, &lambda) in eig.values.iter().enumerate() {
        let admissible = eig
            .values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .all(|(_, &lj)| (nf - 1.0) * lj + lambda + slack >= -ADMISSIBILITY_TOL);
        if !admissible {
            continue;
        }
        let phi = eig.vector(k);
        let shift = (slack + lambda) / (nf - 1.0);
        let drop = (slack + nf * lambda) / (nf - 1.0);
        let matrix =
            a_o.add(&HermitianMatrix::scaled_identity(n, shift))?.sub(&HermitianMatrix::projector(&phi).scale(drop))?;
        out.push(BoundaryCandidate { index: k, eigenvalue: lambda, eigenvector: phi, matrix });
    }
    if out.is_empty() {
        return Err(Error::NoBoundarySolution);
    }
    Ok(out)
}

/// One constrained update of the left factor with the right factor fixed.
/// Returns the new factor and whether a boundary candidate was needed.
fn constrained_update(
    c: &DensityMatrix,
    other: &HermitianMatrix,
    opts: &SolverOptions,
) -> Result<(HermitianMatrix, bool)> {
    let a_o = unconstrained_factor_update(c, other)?;
    let a = trace_correction(&a_o);
    let lowest = a.min_eigenvalue();
    if lowest >= -tol::PSD {
        return Ok((a, false));
    }
    if !opts.boundary_enabled {
        return Err(Error::NotPsd(lowest));
    }
    let mut best: Option<(f64, HermitianMatrix)> = None;
    for cand in psd_boundary_candidates(&a_o)? {
        let d = frobenius_distance(c.matrix(), &cand.matrix.kron(other))?;
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, cand.matrix));
        }
    }
    Ok((best.expect("candidate list is nonempty").1, true))
}

fn objective(c: &DensityMatrix, a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    frobenius_distance(c.matrix(), &a.kron(b)).expect("dims agree")
}

fn run_from(
    c: &DensityMatrix,
    swapped: &DensityMatrix,
    b0: HermitianMatrix,
    opts: &SolverOptions,
    start: usize,
) -> Result<SolverOutcome> {
    let (n, _) = bipartite_dims(c)?;
    let mut a = HermitianMatrix::maximally_mixed(n);
    let mut b = b0;
    let mut previous = objective(c, &a, &b);
    let mut best = (previous, a.clone(), b.clone());

    let mut trace = Vec::with_capacity(2 * opts.max_iter);
    let mut flags = Vec::with_capacity(2 * opts.max_iter);
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        iterations += 1;

        let (new_a, fired) = constrained_update(c, &b, opts)?;
        a = new_a;
        let obj = objective(c, &a, &b);
        trace.push(obj);
        flags.push(fired);
        if obj < best.0 {
            best = (obj, a.clone(), b.clone());
        }

        let (new_b, fired) = constrained_update(swapped, &a, opts)?;
        b = new_b;
        let obj = objective(c, &a, &b);
        trace.push(obj);
        flags.push(fired);
        if obj < best.0 {
            best = (obj, a.clone(), b.clone());
        }

        if (obj - previous).abs() < opts.tol {
            converged = true;
            break;
        }
        previous = obj;
    }

    let (_, a, b) = best;
    let distance = objective(c, &a, &b);
    Ok(SolverOutcome {
        a: DensityMatrix::single(a)?,
        b: DensityMatrix::single(b)?,
        distance,
        iterations,
        boundary_corrections: flags.iter().filter(|&&f| f).count(),
        objective_trace: trace,
        boundary_steps: flags,
        converged,
        start,
        discarded_starts: 0,
    })
}

/// Finds a product state `A⊗B` close to the bipartite state `C`.
///
/// Start 0 follows the deterministic recipe from `B = I/m`; extra starts
/// (see [`SolverOptions::starts`]) begin from random states seeded by
/// `seed` and the start index. The outcome with the smallest distance wins,
/// ties going to the lower start index. Starts that hit
/// [`Error::NoBoundarySolution`] are discarded. Reaching `max_iter` is
/// reported through `converged = false`, not as an error.
pub fn closest_product(c: &DensityMatrix, opts: &SolverOptions) -> Result<SolverOutcome> {
    opts.validate()?;
    let (n, m) = bipartite_dims(c)?;
    let swapped = DensityMatrix::from_parts_unchecked(
        HermitianMatrix::symmetrize(swap_transform(c.matrix().as_matrix(), n, m)?),
        vec![m, n],
    );

    let mut best: Option<SolverOutcome> = None;
    let mut discarded = 0;
    for start in 0..opts.starts {
        let b0 = if start == 0 {
            HermitianMatrix::maximally_mixed(m)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(start as u64);
            random_state_with_rank(&[m], m, &mut rng).into_matrix()
        };
        match run_from(c, &swapped, b0, opts, start) {
            Ok(outcome) => {
                if best.as_ref().is_none_or(|b| outcome.distance < b.distance) {
                    best = Some(outcome);
                }
            }
            Err(Error::NoBoundarySolution) => discarded += 1,
            Err(e) => return Err(e),
        }
    }
    let mut outcome = best.ok_or(Error::NoBoundarySolution)?;
    outcome.discarded_starts = discarded;
    Ok(outcome)
}
