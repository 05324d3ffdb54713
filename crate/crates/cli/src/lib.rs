//! Library half of the verification workbench CLI: instance corpus
//! generation, per-ideal analysis reports, and the corpus suite runner.
//!
//! Reports are `serde_json` values; the default map keeps keys sorted, so a
//! fixed input always serializes to the same bytes.

pub mod corpus;
pub mod reports;

use serde_json::{json, Value};

/// Machine-readable error object for the CLI surface.
pub fn error_json(kind: &str, message: impl AsRef<str>) -> Value {
    json!({"error": {"kind": kind, "message": message.as_ref()}})
}

/// Maps a core error onto a stable error-kind string.
pub fn error_kind(err: &blowup_core::Error) -> &'static str {
    use blowup_core::Error::*;
    match err {
        DimensionMismatch { .. } => "dimension_mismatch",
        InvalidDimension => "invalid_dimension",
        NegativeExponent { .. } => "negative_exponent",
        NotMPrimary { .. } => "not_m_primary",
        UnsupportedDimension { .. } => "unsupported_dimension",
        NotContained { .. } => "not_contained",
        NotReduction { .. } => "not_reduction",
        NotThreeGenerated { .. } => "not_three_generated",
        InsufficientSamples { .. } => "insufficient_samples",
        InvalidSamples(_) => "invalid_samples",
        EnumerationTooLarge(_) => "enumeration_too_large",
        InvalidZeroSequence { .. } => "invalid_zero_sequence",
        NegativeCoefficient { .. } => "negative_coefficient",
        DuplicateZeroSequence { .. } => "duplicate_zero_sequence",
        NotInCone { .. } => "not_in_cone",
        NegativeKernel => "negative_kernel",
        WindowMissingColumn { .. } => "window_missing_column",
        InvalidWindow { .. } => "invalid_window",
        NotAdmissible(_) => "not_admissible",
        NonIntegerValue { .. } => "non_integer_value",
        InvariantViolation(_) => "invariant_violation",
    }
}
