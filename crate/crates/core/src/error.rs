use thiserror::Error;

use crate::liecore::{CheckReport, Element};

/// Errors raised while building or evaluating algebraic objects.
///
/// Identity *violations* are not errors: they come back as a failing
/// [`CheckReport`]. An `Error` means the inputs could not be evaluated at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("basis index {index} outside 0..{dim}")]
    IndexOutOfRange { index: i64, dim: usize },

    #[error("basis kind mismatch: {0}")]
    KindMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("need at least {needed} distinct lambda samples, got {found}")]
    InsufficientSamples { needed: usize, found: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("product is not associative on basis triple {triple:?}: (b_i b_j) b_k = {lhs}, b_i (b_j b_k) = {rhs}")]
    NotAssociative {
        triple: (usize, usize, usize),
        lhs: Element,
        rhs: Element,
    },

    #[error("declared unit fails on basis vector {index}")]
    BadUnit { index: usize },

    #[error("duplicate structure entry for pair ({i}, {j})")]
    DuplicateEntry { i: usize, j: usize },

    #[error("structure constants must be listed with i < j, got ({i}, {j})")]
    UnorderedEntry { i: usize, j: usize },

    #[error("structural gate failed: {}", .0.identity)]
    GateFailed(Box<CheckReport>),

    #[error("modified Yang-Baxter identity violated, construction refused")]
    MybViolated(Box<CheckReport>),

    #[error("invalid rational {0:?}")]
    Rational(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
