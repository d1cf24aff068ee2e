use thiserror::Error;

/// Errors raised by complex construction, operator builders, estimators,
/// generators, and the sampler.
#[derive(Debug, Error)]
pub enum Error {
    // complex construction
    #[error("duplicate facet at canonical position {0}")]
    DuplicateFacet(usize),

    #[error("facet {facet:?} does not assign exactly one vertex to side {side}")]
    ArityMismatch { facet: String, side: usize },

    #[error("facet weight must be strictly positive, got {0}")]
    ZeroWeight(f64),

    #[error("complex has no facets")]
    EmptyComplex,

    #[error("side {side} vertex {vertex} appears in no facet")]
    UncoveredVertex { side: usize, vertex: u32 },

    #[error("face {0} is not contained in any facet")]
    FaceNotInComplex(String),

    #[error("level {level} out of range for a rank-{rank} complex")]
    LevelOutOfRange { level: usize, rank: usize },

    #[error("side {0} is not a side of this complex")]
    SideOutOfRange(usize),

    // measures
    #[error("support violation: mass {mass} at state {state} where the reference is zero")]
    SupportViolation { state: String, mass: f64 },

    #[error("distribution does not match operator domain")]
    DomainMismatch,

    #[error("operators/subspaces live over different measures")]
    MeasureMismatch,

    #[error("state {0} has zero mass; weighted adjoint undefined")]
    ZeroMassState(String),

    // walks
    #[error("order {0:?} is not a permutation of the sides")]
    NotAPermutation(Vec<usize>),

    #[error("color sets overlap each other or the pinned face")]
    OverlappingColorSets,

    #[error("face of rank {rank} too large for a rank-{rank_max} walk")]
    FaceTooLarge { rank: usize, rank_max: usize },

    // estimators / certificates
    #[error("divergence D(μ‖π) = 0 encountered; ratio undefined")]
    DegenerateDivergence,

    #[error("instance too large for grid-exact certification: {0}")]
    InstanceTooLarge(String),

    #[error("sweep has no spectral gap (σ₂ = 1)")]
    ZeroGap,

    // generators
    #[error("graph admits no proper coloring with {0} colors")]
    NoProperColoring(usize),

    #[error("instance too large to enumerate: {0}")]
    TooLarge(String),

    #[error("side {0} is empty")]
    EmptySide(usize),

    #[error("failed to generate a valid instance after {0} attempts")]
    GenerationFailed(usize),

    // sampler
    #[error("mixing time exceeded the budget of {0} sweeps")]
    BudgetExceeded(usize),

    // io
    #[error("invalid instance file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
