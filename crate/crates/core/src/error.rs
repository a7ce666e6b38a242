//! Error type shared across the library.

use thiserror::Error;

/// Errors surfaced by constructors and check drivers.
#[derive(Debug, Error)]
pub enum CoreError {
    /// An operator or suite was requested for a model that does not support it
    /// (e.g. the scaling-flow cocycle is specific to the real `ax+b` model).
    #[error("operation `{op}` is not available for model `{model}`: {reason}")]
    Unsupported {
        op: &'static str,
        model: String,
        reason: &'static str,
    },

    /// Leg-count mismatch when composing or embedding point transformations.
    #[error("leg mismatch in `{op}`: expected {expected}, got {got}")]
    LegMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    /// A closed-form inverse is not available for this transformation.
    #[error("`{0}` has no stored inverse map")]
    NoInverse(&'static str),

    /// Too few random samples survived the domain guards.
    #[error("sample starvation in `{identity}`: {valid}/{count} valid (need ≥ {min_valid})")]
    SampleStarvation {
        identity: String,
        valid: usize,
        count: usize,
        min_valid: usize,
    },

    /// Invalid run or grid configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}
