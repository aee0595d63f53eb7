//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("chart mismatch: expected {expected} variables, got {got}")]
    ChartMismatch { expected: usize, got: usize },

    #[error("coefficient ring mismatch: order {expected} vs {got}")]
    RingMismatch { expected: u32, got: u32 },

    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },

    #[error("expected a homogeneous form of degree {expected}, got degree(s) {got}")]
    DegreeMismatch { expected: usize, got: String },

    #[error("arity mismatch: operator expects {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("cannot insert into a cochain of arity 0")]
    ArityZeroComposition,

    #[error("brace requires at most {arity} arguments, got {got}")]
    BraceTooManyArguments { arity: usize, got: usize },

    #[error("the 3-form is not closed")]
    NotClosed,

    #[error("element is not in the maximal ideal (has an h-free term)")]
    NotInMaximalIdeal,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid permutation images: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
