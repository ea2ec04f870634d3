//! Elements, bracket backends (dense structure constants and graded rules),
//! linear operators and the basic identity checkers.

mod bracket;
mod check;
mod element;
mod operator;

pub(crate) use bracket::validate_index;
pub use bracket::{same_tensor, BasisKind, BasisRule, BracketMap, Window, DEFAULT_GRADED_WINDOW};
pub use check::{
    ad, check_antisymmetry, check_commute, check_equal_brackets, check_equal_operators,
    check_jacobi, cyclic_sum, is_derivation, sweep_pairs, sweep_triples, CheckReport,
    Counterexample,
};
pub use element::{BasisIndex, Element};
pub use operator::{op_commutator, op_polynomial, Composite, Diagonal, LinearOperator};
