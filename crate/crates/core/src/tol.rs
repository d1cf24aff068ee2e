//! Numeric tolerances used across the crate.
//!
//! These are pinned once here so construction-time validation, invariant
//! checks, and certificates all agree on what "equal" means.

/// Probability masses must sum to 1 within this.
pub const MASS: f64 = 1e-12;

/// Row sums of row-stochastic operators.
pub const ROW_SUM: f64 = 1e-10;

/// Stationarity / pushforward residuals (`π_U · B = π_V`).
pub const STATIONARITY: f64 = 1e-10;

/// Entrywise operator identities (projection law, CGSV, adjoint pairs).
pub const OPERATOR: f64 = 1e-10;

/// Theorem certificates (`measured ⋄ bound` slack).
pub const CERT: f64 = 1e-8;

/// Slack allowed when clamping spectral quantities into `[0, 1]`.
pub const SPECTRAL_RANGE: f64 = 1e-9;

/// Rank decisions in subspace computations, relative to the largest
/// singular value.
pub const RANK: f64 = 1e-9;

/// A principal cosine at least `1 - INTERSECT` counts as an intersection
/// direction.
pub const INTERSECT: f64 = 1e-9;

/// Subspace distance for `∩ U_t = U_T` style identities.
pub const SUBSPACE_DIST: f64 = 1e-8;

/// KL chain-rule and marginal identities.
pub const ENTROPY: f64 = 1e-10;

/// Treat a bound `b ≥ 1 - VACUOUS` on a `σ₂`-type quantity as trivially
/// true.
pub const VACUOUS: f64 = 1e-12;
