//! # scanlab-core
//!
//! Construction and spectral/entropic analysis of weighted `n`-partite
//! simplicial complexes, with a focus on the sequential sweep (systematic
//! scan) dynamics and the down-up walk (Glauber dynamics).
//!
//! The crate materializes every random-walk operator on a complex as an
//! explicit row-stochastic matrix carrying its domain and codomain measures,
//! computes the expansion parameters that control these walks (`γ_i`,
//! `ε^{I→J}`, `η^{I→J}`), and certifies the known inequalities between them
//! on concrete instances.
//!
//! Entry points:
//!
//! - [`complex::WeightedComplex`] — validated complexes, links, marginals,
//!   level distributions.
//! - [`walks`] — update operators, down-up walk, sequential sweep, colored
//!   walks, link walks, influence matrices.
//! - [`spectra`] — weighted adjoints and singular values, expansion
//!   parameters, entropy-contraction estimates, subspace geometry.
//! - [`certificates`] — per-theorem pass/fail/vacuous certificates.
//! - [`generators`] — coloring complexes, product complexes, seeded random
//!   instances, and the pinned benchmark corpus.
//! - [`sampler`] — Monte-Carlo sweep sampler with empirical mixing
//!   diagnostics.
//!
//! All instances are small and dense by design: certification needs exact
//! spectra, not scalable sampling. The CLI (`scanlab`) refuses instances
//! with more than 5000 facets unless forced.

pub mod certificates;
pub mod complex;
pub mod error;
pub mod generators;
pub mod measures;
pub mod report;
pub mod sampler;
pub mod spectra;
pub mod walks;

pub mod tol;

pub use complex::{Distribution, Face, WeightedComplex};
pub use error::Error;
pub use walks::MarkovOperator;

/// Default master seed used whenever a caller does not supply one.
///
/// The CLI lets `HDX_SEED` override this.
pub const DEFAULT_SEED: u64 = 0x5eed_1ab5_c0de_0001;
