//! Free nilpotent groups: formal commutators, Hall bases and normal forms.

mod collect;
mod formal;
mod hall;

use thiserror::Error;

pub use collect::{
    evaluate_normal_form_in, normal_form, normal_form_to_word, Collector, NormalForm,
    DEFAULT_BASIS_CAP, DEFAULT_CLASS_LIMIT,
};
pub use formal::{
    commutator_as_word, count_formal_commutators, enumerate_formal_commutators,
    formal_commutator_polynomial, CommutatorCount, FormalCommutator,
};
pub use hall::{hall_basis, witt_count, BasicCommutator, HallBasis};

/// Default cap on enumerated formal commutators and basis sizes.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilpotentError {
    #[error("{count} items exceed enumeration cap {cap}")]
    EnumerationCapExceeded { count: String, cap: u64 },
    #[error("class {class} is above the supported collection limit {limit}")]
    ClassOutOfSupportedRange { class: usize, limit: usize },
    #[error("word uses x{word_d} but the rank is {d}")]
    ArityMismatch { word_d: usize, d: usize },
    #[error("exponent {0} does not fit a machine word")]
    ExponentTooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
