//! Exact arithmetic in GF(q) and the dense linear algebra built on it.

mod field;
mod matrix;

pub use field::{prime_power, FieldSpec, GfElement, MAX_ORDER};
pub use matrix::{GfVector, Matrix, Rref};

pub(crate) use matrix::{combine_rows, span_contains_raw};
