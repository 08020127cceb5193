use thiserror::Error;

/// Errors raised by the chiral-data pipeline.
///
/// Numerical variants carry the offending residual so that callers can tell
/// a marginal tolerance miss from an outright bug.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: char, rank: usize },

    #[error("cannot parse algebra `{0}` (expected e.g. \"A2\", \"E6\")")]
    ParseAlgebra(String),

    #[error("Weyl group of order {order} exceeds the cap {cap}")]
    WeylGroupTooLarge { order: u64, cap: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown label {0:?}")]
    UnknownLabel(Vec<u32>),

    #[error("label index {0} out of range")]
    LabelIndexOutOfRange(usize),

    #[error("S-matrix failed {check} check (residual {residual:e})")]
    NumericalInstability { check: &'static str, residual: f64 },

    #[error("S^2 is not a permutation matrix (residual {residual:e})")]
    NotAPermutation { residual: f64 },

    #[error("Verlinde sum {value} is not within tolerance of a non-negative integer (residual {residual:e})")]
    NonIntegralRank { value: f64, residual: f64 },

    #[error("fusion ring is not associative at ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),

    #[error("label {label} has quantum dimension {quantum_dimension} but invertible={invertible}")]
    InconsistentCurrent {
        label: usize,
        quantum_dimension: f64,
        invertible: bool,
    },

    #[error("fusion of current {current} with label {label} is not a single label")]
    CurrentActionNotUnique { current: usize, label: usize },

    #[error("group is not abelian")]
    NonAbelianGroup,

    #[error("label {0} is not a simple current")]
    NotACurrent(usize),

    #[error("current {0} is not realized by an affine Dynkin diagram automorphism")]
    NoDiagramRealization(usize),

    #[error("folding needs a nontrivial diagram automorphism")]
    TrivialAutomorphism,

    #[error("folded Cartan entry ({row}, {col}) depends on the orbit representative")]
    FoldingInconsistent { row: usize, col: usize },

    #[error("folded Cartan matrix {0:?} matches no known type")]
    UnrecognizedFoldedType(Vec<Vec<i64>>),

    #[error("tuple is not admissible: {0}")]
    InadmissibleTuple(String),

    #[error("no S^J entry for current {current} at label {label}")]
    MissingFixedPointEntry { current: usize, label: usize },

    #[error("sub-bundle rank for character {character} is {value} (residual {residual:e})")]
    NonIntegralSubRank {
        character: usize,
        value: f64,
        residual: f64,
    },

    #[error("search over {size} labels exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: usize, cap: usize },

    #[error("non-orientable surfaces are not supported")]
    NonOrientableUnsupported,

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("classifying algebra is only available for charge conjugation")]
    UnsupportedAutomorphism,

    #[error("boundary condition {label} fails the representation check (residual {residual:e})")]
    RepresentationVerificationFailed { label: usize, residual: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
