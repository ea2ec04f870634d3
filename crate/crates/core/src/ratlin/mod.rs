//! Exact rational scalars, dense matrices, sparse order-3 tensors and
//! Gauss-Jordan elimination over the rationals.

mod matrix;
mod rational;
mod tensor;

pub use matrix::{rank, solve_linear, span_membership, Matrix};
pub(crate) use rational::is_negative;
pub use rational::{
    format_polynomial, format_rational, frac, one, parse_rational, rat, zero, Rational,
};
pub use tensor::SparseTensor3;
