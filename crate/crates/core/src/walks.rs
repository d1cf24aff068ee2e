//! Explicit dense materializations of every walk on a weighted partite
//! complex: update operators `Q_i`, the down-up walk, the sequential sweep,
//! colored walks `C_α^{I→J}`, link walks `M_α`, influence matrices, and the
//! down operator `D_{n→ℓ}`.
//!
//! Every operator carries its domain and codomain measures; those define
//! the weighted adjoint and the weighted singular values computed in
//! [`crate::spectra`]. Constructors index states in the canonical face
//! order of the complex, so operators built from the same complex compose
//! by shared ordering.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::complex::{binomial, Distribution, Face, WeightedComplex};
use crate::error::{Error, Result};
use crate::tol;

/// A row-stochastic matrix together with the measures on its domain and
/// codomain.
#[derive(Clone, Debug)]
pub struct MarkovOperator {
    matrix: DMatrix<f64>,
    domain: Distribution,
    codomain: Distribution,
    row_stochastic: bool,
}

impl MarkovOperator {
    /// Wrap a matrix with its measures, asserting the row-stochasticity and
    /// pushforward (`π_U B = π_V`) invariants.
    pub fn new(matrix: DMatrix<f64>, domain: Distribution, codomain: Distribution) -> Self {
        assert_eq!(matrix.nrows(), domain.len(), "row count matches domain");
        assert_eq!(matrix.ncols(), codomain.len(), "column count matches codomain");
        for r in 0..matrix.nrows() {
            let s: f64 = matrix.row(r).iter().sum();
            assert!(
                (s - 1.0).abs() <= tol::ROW_SUM,
                "row {r} sums to {s}, not 1"
            );
        }
        let push = matrix.tr_mul(domain.mass());
        for (k, (&got, &want)) in push.iter().zip(codomain.mass().iter()).enumerate() {
            assert!(
                (got - want).abs() <= tol::STATIONARITY,
                "pushforward mismatch at state {k}: {got} vs {want}"
            );
        }
        MarkovOperator { matrix, domain, codomain, row_stochastic: true }
    }

    /// The identity walk on a measure.
    pub fn identity(measure: &Distribution) -> Self {
        let m = measure.len();
        MarkovOperator::new(DMatrix::identity(m, m), measure.clone(), measure.clone())
    }

    /// The rank-one walk `𝟙π_V` from `π_U` to `π_V`.
    pub fn rank_one(domain: &Distribution, codomain: &Distribution) -> Self {
        let rows = domain.len();
        let matrix = DMatrix::from_fn(rows, codomain.len(), |_, c| codomain.mass()[c]);
        MarkovOperator::new(matrix, domain.clone(), codomain.clone())
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn domain(&self) -> &Distribution {
        &self.domain
    }

    pub fn codomain(&self) -> &Distribution {
        &self.codomain
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.row_stochastic
    }

    pub fn is_square(&self) -> bool {
        self.matrix.nrows() == self.matrix.ncols()
    }

    /// Composition `self · other` (apply `self` first under the row-vector
    /// convention). States must match by shared canonical ordering.
    pub fn compose(&self, other: &MarkovOperator) -> Result<MarkovOperator> {
        if !self.codomain.same_universe(other.domain()) {
            return Err(Error::DomainMismatch);
        }
        Ok(MarkovOperator::new(
            &self.matrix * &other.matrix,
            self.domain.clone(),
            other.codomain.clone(),
        ))
    }

    /// The adjoint `B*` with respect to the weighted inner products:
    /// `B*(y, x) = B(x, y)·π_U(x)/π_V(y)`.
    ///
    /// Fails with [`Error::ZeroMassState`] when a measure is not strictly
    /// positive.
    pub fn adjoint(&self) -> Result<MarkovOperator> {
        for (dist, name) in [(&self.domain, "domain"), (&self.codomain, "codomain")] {
            if let Some(k) = dist.mass().iter().position(|&m| m <= 0.0) {
                return Err(Error::ZeroMassState(format!(
                    "{name} state {}",
                    dist.items()[k].label()
                )));
            }
        }
        let (rows, cols) = (self.matrix.nrows(), self.matrix.ncols());
        let adj = DMatrix::from_fn(cols, rows, |y, x| {
            self.matrix[(x, y)] * self.domain.mass()[x] / self.codomain.mass()[y]
        });
        Ok(MarkovOperator::new(adj, self.codomain.clone(), self.domain.clone()))
    }

    /// Entrywise max-norm distance to another operator over the same state
    /// spaces.
    pub fn max_distance(&self, other: &MarkovOperator) -> f64 {
        (self.matrix() - other.matrix()).amax()
    }

    /// Dense CSV dump, row-major, header = codomain state labels, each row
    /// prefixed by its domain state label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state");
        for item in self.codomain.items() {
            let _ = write!(out, ",{}", item.label());
        }
        out.push('\n');
        for (r, item) in self.domain.items().iter().enumerate() {
            let _ = write!(out, "{}", item.label());
            for c in 0..self.matrix.ncols() {
                let _ = write!(out, ",{}", self.matrix[(r, c)]);
            }
            out.push('\n');
        }
        out
    }
}

/// The update operator `Q_i`: re-sample coordinate `i` from its conditional
/// given the others.
pub fn update_operator(x: &WeightedComplex, side: usize) -> Result<MarkovOperator> {
    if !x.sides().contains_key(&side) {
        return Err(Error::SideOutOfRange(side));
    }
    let off: Vec<usize> = x.side_ids().into_iter().filter(|&s| s != side).collect();
    let m = x.facet_count();
    let mut matrix = DMatrix::zeros(m, m);
    for group in x.group_by_projection(&off).values() {
        let total: f64 = group.iter().map(|&i| x.pi()[i]).sum();
        for &a in group {
            for &b in group {
                matrix[(a, b)] = x.pi()[b] / total;
            }
        }
    }
    let pi = x.facet_distribution();
    Ok(MarkovOperator::new(matrix, pi.clone(), pi))
}

/// The down-up walk (Glauber dynamics) `P_GD = (1/n)·Σ_i Q_i`.
pub fn down_up_walk(x: &WeightedComplex) -> Result<MarkovOperator> {
    let ids = x.side_ids();
    assert!(!ids.is_empty(), "down-up walk needs at least one side");
    let m = x.facet_count();
    let mut acc = DMatrix::zeros(m, m);
    for &i in &ids {
        acc += update_operator(x, i)?.matrix();
    }
    acc /= ids.len() as f64;
    let pi = x.facet_distribution();
    Ok(MarkovOperator::new(acc, pi.clone(), pi))
}

/// The sequential sweep `P_SQ^{(s)} = Q_{s(1)} ··· Q_{s(n)}`.
///
/// Row-stochastic and `π`-stationary but generally not reversible; its
/// adjoint is the reverse-order product.
pub fn sequential_sweep(x: &WeightedComplex, order: &[usize]) -> Result<MarkovOperator> {
    let ids: BTreeSet<usize> = x.side_ids().into_iter().collect();
    let given: BTreeSet<usize> = order.iter().copied().collect();
    if given != ids || order.len() != ids.len() {
        return Err(Error::NotAPermutation(order.to_vec()));
    }
    let pi = x.facet_distribution();
    let mut sweep = MarkovOperator::identity(&pi);
    for &i in order {
        sweep = sweep.compose(&update_operator(x, i)?)?;
    }
    Ok(sweep)
}

/// The `(I, J)` colored random walk `C_α^{I→J}` from `X_α[I]` to `X_α[J]`:
/// `C(τ_I, τ_J) = π_J^{(α ⊕ τ_I)}(τ_J)`.
pub fn colored_walk(
    x: &WeightedComplex,
    alpha: &Face,
    i_set: &[usize],
    j_set: &[usize],
) -> Result<MarkovOperator> {
    let typ = alpha.type_set();
    let i: BTreeSet<usize> = i_set.iter().copied().collect();
    let j: BTreeSet<usize> = j_set.iter().copied().collect();
    if i.is_empty()
        || j.is_empty()
        || i.intersection(&j).next().is_some()
        || i.iter().chain(j.iter()).any(|s| typ.contains(s))
    {
        return Err(Error::OverlappingColorSets);
    }
    for s in i.iter().chain(j.iter()) {
        if !x.sides().contains_key(s) {
            return Err(Error::SideOutOfRange(*s));
        }
    }
    let link = x.link(alpha)?;
    let iv: Vec<usize> = i.iter().copied().collect();
    let jv: Vec<usize> = j.iter().copied().collect();
    let rows: Vec<Face> = link.faces_of_type(&iv);
    let cols: Vec<Face> = link.faces_of_type(&jv);
    let mut matrix = DMatrix::zeros(rows.len(), cols.len());
    let mut row_mass = vec![0.0; rows.len()];
    let mut col_mass = vec![0.0; cols.len()];
    for (f, &w) in link.facets().iter().zip(link.pi().iter()) {
        let r = rows.binary_search(&f.project(&iv)).expect("row present");
        let c = cols.binary_search(&f.project(&jv)).expect("col present");
        matrix[(r, c)] += w;
        row_mass[r] += w;
        col_mass[c] += w;
    }
    for r in 0..rows.len() {
        for c in 0..cols.len() {
            matrix[(r, c)] /= row_mass[r];
        }
    }
    let domain = Distribution::from_weights(rows, row_mass)?;
    let codomain = Distribution::from_weights(cols, col_mass)?;
    Ok(MarkovOperator::new(matrix, domain, codomain))
}

/// The link walk `M_α` on the vertices `X_α^{(1)}`:
/// `M_α(x, y) = π_2^{(α)}(x, y) / (2·π_1^{(α)}(x))`.
///
/// Self-adjoint with respect to `π_1^{(α)}`; zero diagonal on partite
/// complexes (a side never pairs with itself).
pub fn link_walk(x: &WeightedComplex, alpha: &Face) -> Result<MarkovOperator> {
    if alpha.rank() + 2 > x.n() {
        return Err(Error::FaceTooLarge { rank: alpha.rank(), rank_max: x.n().saturating_sub(2) });
    }
    let link = x.link(alpha)?;
    let pi1 = link.level_distribution(1)?;
    let pi2 = link.level_distribution(2)?;
    let m = pi1.len();
    let mut matrix = DMatrix::zeros(m, m);
    for (a, fa) in pi1.items().iter().enumerate() {
        for (b, fb) in pi1.items().iter().enumerate() {
            if a == b {
                continue;
            }
            if let Some(pair) = fa.join(fb) {
                matrix[(a, b)] = pi2.mass_of(&pair) / (2.0 * pi1.mass()[a]);
            }
        }
    }
    Ok(MarkovOperator::new(matrix, pi1.clone(), pi1))
}

/// The `φ_i` vector on the link's vertices: `n − |α| − 1` on side `i`,
/// `−1` elsewhere. Eigenvector of `M_α` with eigenvalue `−1/(n−|α|−1)`.
pub fn phi_vector(states: &[Face], side: usize, rank_gap: usize) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_iterator(
        states.len(),
        states.iter().map(|f| {
            if f.get(side).is_some() {
                (rank_gap - 1) as f64
            } else {
                -1.0
            }
        }),
    )
}

/// An influence matrix together with the state list and the measure making
/// it self-adjoint.
#[derive(Clone, Debug)]
pub struct InfluenceMatrix {
    pub states: Vec<Face>,
    pub matrix: DMatrix<f64>,
    pub measure: Distribution,
}

/// The influence matrix `Inf_α` on the link's vertices:
/// off-diagonal blocks `π_{{j}}^{(α⊕x_i)}(y_j) − π_{{j}}^{(α)}(y_j)`, zero
/// blocks on the diagonal.
pub fn influence_matrix(x: &WeightedComplex, alpha: &Face) -> Result<InfluenceMatrix> {
    if alpha.rank() + 2 > x.n() {
        return Err(Error::FaceTooLarge { rank: alpha.rank(), rank_max: x.n().saturating_sub(2) });
    }
    let link = x.link(alpha)?;
    let pi1 = link.level_distribution(1)?;
    let states: Vec<Face> = pi1.items().to_vec();
    let m = states.len();
    // base single-coordinate marginals of the pinned complex
    let mut base = vec![0.0; m];
    for (k, f) in states.iter().enumerate() {
        let &(side, _) = &f.entries()[0];
        base[k] = link.marginal(&[side])?.mass_of(f);
    }
    let mut matrix = DMatrix::zeros(m, m);
    for (a, fa) in states.iter().enumerate() {
        let side_a = fa.entries()[0].0;
        let pinned = link.link(fa)?;
        for (b, fb) in states.iter().enumerate() {
            let side_b = fb.entries()[0].0;
            if side_a == side_b {
                continue;
            }
            let cond = pinned.marginal(&[side_b])?.mass_of(fb);
            matrix[(a, b)] = cond - base[b];
        }
    }
    Ok(InfluenceMatrix { states, matrix, measure: pi1 })
}

/// The down operator `D_{n→ℓ}`: `D(ω, α) = 1[α ⊆ ω]/C(n, ℓ)`.
///
/// Satisfies `π_n · D_{n→ℓ} = π_ℓ`.
pub fn down_operator(x: &WeightedComplex, level: usize) -> Result<MarkovOperator> {
    let n = x.n();
    if level > n {
        return Err(Error::LevelOutOfRange { level, rank: n });
    }
    let pi_l = x.level_distribution(level)?;
    let denom = binomial(n, level);
    let matrix = DMatrix::from_fn(x.facet_count(), pi_l.len(), |r, c| {
        if x.facets()[r].extends(&pi_l.items()[c]) {
            1.0 / denom
        } else {
            0.0
        }
    });
    Ok(MarkovOperator::new(matrix, x.facet_distribution(), pi_l))
}
