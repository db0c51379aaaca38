use crate::lattice::Shift;
use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// parse/usage failures are code 1, numerical failures code 2, and an
/// unresolvable phase adjustment code 3.
#[derive(Debug, Error)]
pub enum SivError {
    #[error("b-spline order must be at least 1, got {0}")]
    InvalidOrder(u32),

    #[error("direction matrix must have full row rank {expected}, got rank {actual}")]
    DegenerateDirectionMatrix { expected: usize, actual: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("no lattice translate of the generator is alive on the region")]
    EmptyRestriction,

    #[error("signal has {0} support vertices; bipartition search is capped at {1}")]
    TooManyVertices(usize, usize),

    #[error("{0} vectors exceed the subset-enumeration limit of {1}")]
    TooManyVectors(usize, usize),

    #[error("subset enumeration exceeded the node budget of {0}")]
    EnumerationBudget(u64),

    #[error("candidate offsets span only {achieved} of {required} outer-product dimensions")]
    CandidatesInsufficient { achieved: usize, required: usize },

    #[error("sample matrix is rank deficient: rank {rank} < {cols} columns")]
    RankDeficientPatch { rank: usize, cols: usize },

    #[error("generator is locally linearly dependent on region {0}")]
    LocalDependence(usize),

    #[error("translate-overlap region for shift {0} is not covered by any sampling region")]
    CoverageViolation(Shift),

    #[error("no phase-retrievable offset set found after {attempts} attempts (patch sizes {min_size}..={max_size})")]
    FrameSearchExhausted {
        attempts: usize,
        min_size: usize,
        max_size: usize,
    },

    #[error(
        "phase conflict: patches (l={left_l}, m={left_m}) and (l={right_l}, m={right_m}) \
         have signed inner product {value:.6e} < -{threshold:.6e}"
    )]
    PhaseConflict {
        left_l: Shift,
        left_m: usize,
        right_l: Shift,
        right_m: usize,
        value: f64,
        threshold: f64,
    },

    #[error("non-finite value in input")]
    NonFiniteInput,

    #[error("sample set incomplete: missing {expected} values for patch {patch} at shift {shift}")]
    IncompleteSamples {
        patch: usize,
        shift: Shift,
        expected: usize,
    },

    #[error("no automatic region construction for this generator")]
    UnsupportedGenerator,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SivError {
    /// True for failures of the numerical machinery (as opposed to bad
    /// input files or an irreconcilable phase adjustment).
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            SivError::Parse { .. }
                | SivError::Io(_)
                | SivError::Json(_)
                | SivError::InvalidArgument(_)
                | SivError::PhaseConflict { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, SivError>;
