use alloc::string::String;

/// Errors reported by the library. Each variant names the violated
/// precondition; none of them indicate an internal failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has a non-integer entry")]
    NotIntegral,
    #[error("lattice basis is rank deficient (rank {rank}, need {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("invalid weight lattice: {0}")]
    InvalidLattice(String),
    #[error("point {0} is not in the lattice")]
    NotInLattice(String),
    #[error("cone is not simplicial or not strongly convex")]
    NonSimplicial,
    #[error("cone is not full dimensional")]
    NotFullDimensional,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("cone is not a face of the fan")]
    NotAFace,
    #[error("functional list is empty")]
    EmptyFunctionals,
    #[error("subdivision region is not simplicial")]
    NonSimplicialRegion,
    #[error("invalid quotient type: {0}")]
    InvalidType(String),
    #[error("type is not Gorenstein")]
    NotGorenstein,
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("degenerate simplex")]
    DegenerateSimplex,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("guard exceeded: {what} = {value} > {limit} (raise it with CREPANTO_GUARD)")]
    GuardExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("type is basic; it has no residual singularities")]
    NoResidue,
    #[error("type is not basic")]
    NotBasic,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("degenerate polytope")]
    DegeneratePolytope,
    #[error("anticanonical divisor is not ample")]
    NotAmple,
}

pub type Result<T> = core::result::Result<T, Error>;
