//! Weighted-inner-product linear algebra and the expansion parameters of a
//! complex: adjoints, singular values, link eigenvalues `γ_i`, variance
//! contraction `ε^{I→J}`, entropy contraction `η^{I→J}`, and the subspace
//! geometry behind the sweep bound.
//!
//! All `σ` values in this crate come from one place: the Euclidean singular
//! values of the symmetrization `D_U^{1/2}·B·D_V^{−1/2}`, which matches the
//! adjoint convention `B*(y,x) = B(x,y)·π_U(x)/π_V(y)` exactly.

mod jacobi;
mod opt;
mod subspace;

pub use jacobi::jacobi_eigen;

pub use opt::{
    kappa_grid_estimate as opt_kappa_grid, simplex_grid, ContractionEstimate, EstimateMethod,
};
pub use subspace::{subspace_cosine, subspace_intersection, subspace_u, WeightedSubspace};

use nalgebra::{DMatrix, DVector};

use crate::complex::{Face, WeightedComplex};
use crate::error::{Error, Result};
use crate::walks::{self, MarkovOperator};

/// The adjoint operator with respect to the weighted inner products.
pub fn weighted_adjoint(op: &MarkovOperator) -> Result<MarkovOperator> {
    op.adjoint()
}

/// Euclidean symmetrization `D_U^{1/2}·B·D_V^{−1/2}` of an operator.
fn symmetrized(matrix: &DMatrix<f64>, du: &DVector<f64>, dv: &DVector<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(matrix.nrows(), matrix.ncols(), |r, c| {
        du[r].sqrt() * matrix[(r, c)] / dv[c].sqrt()
    })
}

/// Weighted singular values of an operator, sorted descending.
pub fn weighted_singular_values(op: &MarkovOperator) -> Vec<f64> {
    let s = symmetrized(op.matrix(), op.domain().mass(), op.codomain().mass());
    let mut sv: Vec<f64> = s.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

/// Second singular value `σ₂` of a row-stochastic operator under the
/// weighted inner products. Zero when the operator has a single row or
/// column (rank-one walks have no second direction).
pub fn sigma2(op: &MarkovOperator) -> Result<f64> {
    if !op.is_row_stochastic() {
        return Err(Error::MeasureMismatch);
    }
    let sv = weighted_singular_values(op);
    Ok(sv.get(1).copied().unwrap_or(0.0))
}

/// Eigenvalues of a square operator that is self-adjoint with respect to
/// `measure`, sorted descending.
///
/// Jacobi at certification scale; the QR fallback only ever sees forced
/// oversize instances.
pub fn weighted_eigenvalues(matrix: &DMatrix<f64>, measure: &DVector<f64>) -> Vec<f64> {
    let s = symmetrized(matrix, measure, measure);
    let sym = (&s + s.transpose()) * 0.5;
    if sym.nrows() <= 512 {
        return jacobi::jacobi_eigen(sym).0;
    }
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    ev
}

/// `λ₂` of a self-adjoint square walk.
pub fn lambda2(op: &MarkovOperator) -> f64 {
    let ev = weighted_eigenvalues(op.matrix(), op.domain().mass());
    ev.get(1).copied().unwrap_or(0.0)
}

/// Spectral gap `1 − σ₂` of a square π-stationary walk.
pub fn spectral_gap(op: &MarkovOperator) -> Result<f64> {
    Ok(1.0 - sigma2(op)?)
}

/// Local spectral expansion profile: `γ_i = max_{α ∈ X^{(i)}} λ₂(M_α)` for
/// `i = 0..n−2`. Empty for `n < 2`.
pub fn gamma_params(x: &WeightedComplex) -> Result<Vec<f64>> {
    let n = x.n();
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(n - 1);
    for rank in 0..=(n - 2) {
        let mut worst = f64::NEG_INFINITY;
        for alpha in x.faces_of_rank(rank) {
            let m = walks::link_walk(x, &alpha)?;
            worst = worst.max(lambda2(&m));
        }
        out.push(worst);
    }
    Ok(out)
}

/// The `(I, J)` variance contraction parameter
/// `ε^{I→J} = max_{α ∈ X[(I∪J)^c]} σ₂(C_α^{I→J})`.
pub fn eps_param(x: &WeightedComplex, i_set: &[usize], j_set: &[usize]) -> Result<f64> {
    let comp: Vec<usize> = x
        .side_ids()
        .into_iter()
        .filter(|s| !i_set.contains(s) && !j_set.contains(s))
        .collect();
    let mut worst: f64 = 0.0;
    for alpha in x.faces_of_type(&comp) {
        let c = walks::colored_walk(x, &alpha, i_set, j_set)?;
        worst = worst.max(sigma2(&c)?);
    }
    Ok(worst)
}

/// The `ε`-product profile: `ε_ℓ` is the worst `σ₂(C_α^{i→j})` over all
/// rank-`ℓ` pinnings and singleton pairs `i ≠ j`.
pub fn eps_product_profile(x: &WeightedComplex) -> Result<Vec<f64>> {
    let n = x.n();
    if n < 2 {
        return Ok(Vec::new());
    }
    let ids = x.side_ids();
    let mut out = Vec::with_capacity(n - 1);
    for level in 0..=(n - 2) {
        let mut worst: f64 = 0.0;
        for alpha in x.faces_of_rank(level) {
            let typ = alpha.type_set();
            let free: Vec<usize> = ids.iter().copied().filter(|s| !typ.contains(s)).collect();
            for (a, &i) in free.iter().enumerate() {
                for &j in &free[a + 1..] {
                    let c = walks::colored_walk(x, &alpha, &[i], &[j])?;
                    worst = worst.max(sigma2(&c)?);
                }
            }
        }
        out.push(worst);
    }
    Ok(out)
}

/// One-sided estimate of the `(I, J)` entropy contraction parameter.
///
/// `kappa_hat` never exceeds the true `κ^{I→J}`, hence `eta_hat = 1 −
/// kappa_hat` is an upper bound on `η^{I→J}`. The `method` field records
/// whether the simplex was searched exhaustively.
pub fn eta_param_estimate(
    x: &WeightedComplex,
    i_set: &[usize],
    j_set: &[usize],
    budget: usize,
) -> Result<ContractionEstimate> {
    assert!(budget >= 1, "at least one optimization restart");
    let comp: Vec<usize> = x
        .side_ids()
        .into_iter()
        .filter(|s| !i_set.contains(s) && !j_set.contains(s))
        .collect();
    let mut best: Option<ContractionEstimate> = None;
    for alpha in x.faces_of_type(&comp) {
        let c = walks::colored_walk(x, &alpha, i_set, j_set)?;
        let est = opt::kappa_estimate(&c, budget);
        best = Some(match best {
            None => est,
            Some(prev) if est.kappa_hat > prev.kappa_hat => est,
            Some(prev) => prev,
        });
    }
    best.ok_or(Error::OverlappingColorSets)
}

/// One-sided estimate of `κ(P) = max_μ D(μP‖π)/D(μ‖π)` for a square
/// π-stationary walk. Only a lower bound on `κ` (hence an upper bound on
/// the entropy contraction factor `EC(P) = 1 − κ(P)`) is claimed.
pub fn entropy_contraction_estimate(op: &MarkovOperator, budget: usize) -> ContractionEstimate {
    assert!(op.is_square(), "entropy contraction needs a square walk");
    opt::kappa_estimate(op, budget)
}

/// Projection matrix onto a subspace (in state coordinates).
pub fn projector(space: &WeightedSubspace) -> DMatrix<f64> {
    space.projector()
}

/// Convenience: the `φ` eigenvector check data for a link walk.
pub fn phi_vector(states: &[Face], side: usize, rank_gap: usize) -> DVector<f64> {
    walks::phi_vector(states, side, rank_gap)
}

/// Maximum eigenvalue of an influence matrix (self-adjoint with respect to
/// the link's level-1 measure).
pub fn influence_lambda_max(inf: &walks::InfluenceMatrix) -> f64 {
    let ev = weighted_eigenvalues(&inf.matrix, inf.measure.mass());
    ev.first().copied().unwrap_or(0.0)
}
