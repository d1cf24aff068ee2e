//! Subspaces of the facet space under the `π`-weighted inner product:
//! the coordinate subspaces `U_I`, numerical intersections via principal
//! vectors, and the cosine of the angle between subspaces (after deflating
//! their intersection).

use nalgebra::DMatrix;

use crate::complex::{Distribution, WeightedComplex};
use crate::error::{Error, Result};
use crate::tol;

/// A subspace of `ℝ^{X^{(n)}}` with a `π`-orthonormal basis.
#[derive(Clone, Debug)]
pub struct WeightedSubspace {
    ambient: Distribution,
    basis: DMatrix<f64>,
}

impl WeightedSubspace {
    /// Wrap a basis, checking `⟨b_i, b_j⟩_π = δ_ij`.
    pub fn new(ambient: Distribution, basis: DMatrix<f64>) -> Self {
        assert_eq!(basis.nrows(), ambient.len());
        let lift = euclidean_lift(&ambient, &basis);
        let gram = lift.tr_mul(&lift);
        for r in 0..gram.nrows() {
            for c in 0..gram.ncols() {
                let want = if r == c { 1.0 } else { 0.0 };
                assert!(
                    (gram[(r, c)] - want).abs() <= tol::OPERATOR,
                    "basis not π-orthonormal at ({r},{c}): {}",
                    gram[(r, c)]
                );
            }
        }
        WeightedSubspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> &Distribution {
        &self.ambient
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The orthogonal projection matrix onto this subspace: `B·Bᵀ·D`.
    pub fn projector(&self) -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(self.ambient.mass());
        &self.basis * (self.basis.transpose() * d)
    }

    /// Max-norm distance between projectors; a subspace metric.
    pub fn distance(&self, other: &WeightedSubspace) -> f64 {
        (self.projector() - other.projector()).amax()
    }

    fn same_ambient(&self, other: &WeightedSubspace) -> bool {
        self.ambient.same_universe(&other.ambient)
            && self
                .ambient
                .mass()
                .iter()
                .zip(other.ambient.mass().iter())
                .all(|(a, b)| (a - b).abs() <= tol::MASS)
    }
}

/// Map a π-orthonormal basis to a Euclidean-orthonormal one by scaling rows
/// with `√π`.
fn euclidean_lift(ambient: &Distribution, basis: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = basis.clone();
    for r in 0..out.nrows() {
        let s = ambient.mass()[r].sqrt();
        for c in 0..out.ncols() {
            out[(r, c)] *= s;
        }
    }
    out
}

fn euclidean_drop(ambient: &Distribution, lifted: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = lifted.clone();
    for r in 0..out.nrows() {
        let s = ambient.mass()[r].sqrt();
        for c in 0..out.ncols() {
            out[(r, c)] /= s;
        }
    }
    out
}

/// The coordinate subspace `U_I = span{u_α : α ∈ X[I^c]}` where
/// `u_α(ω) = 1[ω ⊇ α]`.
///
/// The indicators are disjointly supported, so normalizing by
/// `√π_{I^c}(α)` already gives a π-orthonormal basis; the dimension is
/// `|X[I^c]|`.
pub fn subspace_u(x: &WeightedComplex, i_set: &[usize]) -> WeightedSubspace {
    let comp: Vec<usize> =
        x.side_ids().into_iter().filter(|s| !i_set.contains(s)).collect();
    let groups = x.group_by_projection(&comp);
    let m = x.facet_count();
    let mut basis = DMatrix::zeros(m, groups.len());
    for (col, (_, members)) in groups.iter().enumerate() {
        let mass: f64 = members.iter().map(|&i| x.pi()[i]).sum();
        let scale = 1.0 / mass.sqrt();
        for &i in members {
            basis[(i, col)] = scale;
        }
    }
    WeightedSubspace::new(x.facet_distribution(), basis)
}

/// Numerical intersection `U ∩ V` via principal vectors: directions whose
/// principal cosine is at least `1 − 1e-9`.
///
/// Principal directions come from the Jacobi eigendecomposition of `G·Gᵀ`
/// with `G` the cross-Gram of the Euclidean lifts; the iterative QR
/// vector output of the linear-algebra backend is not reliable enough
/// here.
pub fn subspace_intersection(
    u: &WeightedSubspace,
    v: &WeightedSubspace,
) -> Result<WeightedSubspace> {
    if !u.same_ambient(v) {
        return Err(Error::MeasureMismatch);
    }
    let au = euclidean_lift(&u.ambient, &u.basis);
    let av = euclidean_lift(&v.ambient, &v.basis);
    if au.ncols() == 0 || av.ncols() == 0 {
        return Ok(WeightedSubspace {
            ambient: u.ambient.clone(),
            basis: DMatrix::zeros(u.ambient.len(), 0),
        });
    }
    // eigendecompose the smaller Gram side; for unit principal cosines the
    // left and right principal directions span the same intersection
    let gram = au.tr_mul(&av);
    let (host, small) = if au.ncols() <= av.ncols() {
        (&au, &gram * gram.transpose())
    } else {
        (&av, gram.tr_mul(&gram))
    };
    let (values, vectors) = super::jacobi::jacobi_eigen(small);
    let floor = (1.0 - tol::INTERSECT) * (1.0 - tol::INTERSECT);
    let keep = values.iter().take_while(|&&lambda| lambda >= floor).count();
    let mut lifted = DMatrix::zeros(au.nrows(), keep);
    for col in 0..keep {
        let dir = host * vectors.column(col);
        lifted.set_column(col, &dir);
    }
    Ok(WeightedSubspace {
        ambient: u.ambient.clone(),
        basis: euclidean_drop(&u.ambient, &lifted),
    })
}

/// Orthonormal basis (Euclidean coordinates) of the columns of `m` by
/// modified Gram–Schmidt with pivoting and re-orthogonalization, rank cut
/// at `tol::RANK` relative to the larger of the initial column scale and
/// the unit scale (the inputs here are residuals of unit-norm columns, so
/// a residual that is all noise must rank as empty).
fn orthonormal_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let rows = m.nrows();
    if m.ncols() == 0 {
        return m.clone();
    }
    let mut cols: Vec<nalgebra::DVector<f64>> =
        m.column_iter().map(|c| c.into_owned()).collect();
    let scale = cols.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    let cutoff = tol::RANK * scale;
    let mut out: Vec<nalgebra::DVector<f64>> = Vec::new();
    for _ in 0..cols.len() {
        let (pivot, norm) = cols
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite").then(b.0.cmp(&a.0)))
            .expect("nonempty");
        if norm <= cutoff {
            break;
        }
        let mut q = cols[pivot].clone() / norm;
        // one re-orthogonalization pass keeps accumulated drift out
        for prev in &out {
            let proj = prev.dot(&q);
            q -= prev * proj;
        }
        let renorm = q.norm();
        if renorm <= tol::RANK {
            cols[pivot].fill(0.0);
            continue;
        }
        q /= renorm;
        for c in cols.iter_mut() {
            let proj = q.dot(c);
            *c -= &q * proj;
        }
        out.push(q);
    }
    let mut basis = DMatrix::zeros(rows, out.len());
    for (col, q) in out.iter().enumerate() {
        basis.set_column(col, q);
    }
    basis
}

/// Cosine of the angle between two subspaces after deflating their
/// intersection: the largest singular value of the cross-Gram of the
/// intersection-deflated orthonormal bases.
///
/// `U = V` gives 0 (everything is deflated).
pub fn subspace_cosine(u: &WeightedSubspace, v: &WeightedSubspace) -> Result<f64> {
    if !u.same_ambient(v) {
        return Err(Error::MeasureMismatch);
    }
    let w = subspace_intersection(u, v)?;
    let wl = euclidean_lift(&w.ambient, &w.basis);
    let deflate = |space: &WeightedSubspace| -> DMatrix<f64> {
        let lift = euclidean_lift(&space.ambient, &space.basis);
        if wl.ncols() == 0 {
            return orthonormal_columns(&lift);
        }
        let residual = &lift - &wl * (wl.tr_mul(&lift));
        orthonormal_columns(&residual)
    };
    let du = deflate(u);
    let dv = deflate(v);
    if du.ncols() == 0 || dv.ncols() == 0 {
        return Ok(0.0);
    }
    let cross = du.tr_mul(&dv);
    // σ_max via the smaller Gram matrix
    let gram = if cross.nrows() <= cross.ncols() {
        &cross * cross.transpose()
    } else {
        cross.tr_mul(&cross)
    };
    let (values, _) = super::jacobi::jacobi_eigen(gram);
    let lambda_max = values.first().copied().unwrap_or(0.0);
    Ok(lambda_max.max(0.0).sqrt())
}
