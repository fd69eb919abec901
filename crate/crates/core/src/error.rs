//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: usize, got: usize },

    #[error("modulus is reducible over Z_{p}: divisible by {factor}")]
    ReducibleModulus { p: u64, factor: String },

    #[error("direct sum must have at least two summands")]
    EmptyDirectSum,

    #[error("direct sums cannot be nested")]
    NestedDirectSum,

    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("not a unit")]
    NotAUnit,

    #[error("ring is not local")]
    NotLocal,

    #[error("ring mismatch: operands belong to different rings")]
    RingMismatch,

    #[error("operation requires a field base; use the exhaustive test instead")]
    FieldRequired,

    #[error("operation is restricted to non-field local summands; summand {summand} is a field")]
    FieldSummand { summand: String },

    #[error("method not applicable: {0}")]
    MethodMismatch(String),

    #[error("enumeration budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },

    #[error("number of dual variables {k} outside supported enumeration range 1..={max}")]
    KOutOfRange { k: u32, max: u32 },

    #[error("unsupported ring variant for this operation: {0}")]
    UnsupportedVariant(String),
}

impl Error {
    /// Stable machine-readable code for CLI/report consumers.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::NotPrime(_) => "not_prime",
            Error::BadModulusDegree { .. } => "bad_modulus",
            Error::ReducibleModulus { .. } => "reducible_modulus",
            Error::EmptyDirectSum => "empty_direct_sum",
            Error::NestedDirectSum => "nested_direct_sum",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::NotAUnit => "not_a_unit",
            Error::NotLocal => "not_local",
            Error::RingMismatch => "ring_mismatch",
            Error::FieldRequired => "field_required",
            Error::FieldSummand { .. } => "field_summand",
            Error::MethodMismatch(_) => "method_mismatch",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::KOutOfRange { .. } => "k_out_of_range",
            Error::UnsupportedVariant(_) => "unsupported_variant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
