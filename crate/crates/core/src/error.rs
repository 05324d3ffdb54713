use thiserror::Error;

/// Errors reported by the monomial-ideal and cohomology-table operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 1")]
    InvalidDimension,

    #[error("exponents must be nonnegative (axis {axis})")]
    NegativeExponent { axis: usize },

    #[error("ideal is not m-primary: no pure power of variable {axis} among the generators")]
    NotMPrimary { axis: usize },

    #[error("operation requires 3 variables, found {found}")]
    UnsupportedDimension { found: usize },

    #[error("containment fails: {witness} is not in the larger ideal")]
    NotContained { witness: String },

    #[error("not a reduction: {witness} lies outside the Newton polyhedron of the candidate reduction")]
    NotReduction { witness: String },

    #[error("reduction must be generated by exactly 3 monomials, found {found}")]
    NotThreeGenerated { found: usize },

    #[error(
        "cannot certify the polynomial tail with n_max = {n_max}: fourth differences must \
         vanish on at least {needed} trailing samples; extend the sample range"
    )]
    InsufficientSamples { n_max: u32, needed: u32 },

    #[error("invalid Hilbert samples: {0}")]
    InvalidSamples(String),

    #[error("enumeration box too large: {0}")]
    EnumerationTooLarge(String),

    #[error("zero sequence must be strictly decreasing with one or two entries, got [{got}]")]
    InvalidZeroSequence { got: String },

    #[error("negative coefficient {value} for zero sequence ({zeros})")]
    NegativeCoefficient { zeros: String, value: String },

    #[error("duplicate zero sequence ({zeros})")]
    DuplicateZeroSequence { zeros: String },

    #[error("h1 data outside the supernatural cone: a_{index} = {value}")]
    NotInCone { index: usize, value: String },

    #[error("negative kernel: 3*h1(1) < h1(2)")]
    NegativeKernel,

    #[error("window [{lo}, {hi}] must contain column {column}")]
    WindowMissingColumn { lo: i64, hi: i64, column: i64 },

    #[error("invalid window: lo {lo} exceeds hi {hi}")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("cohomology table is not admissible: {0}")]
    NotAdmissible(String),

    #[error("h1({column}) = {value} is not an integer")]
    NonIntegerValue { column: i64, value: String },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
