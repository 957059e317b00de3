//! Exact arithmetic in `F_{p^m}` and `F_q[h]/(h^k)`, plus dense exact linear
//! algebra used by every other module.

mod field;
mod matrix;
mod ring;

pub use field::{Elem, FieldSpec, RingSpecFile, MAX_FIELD_ORDER};
pub(crate) use field::is_prime;
pub use matrix::{invert, nullspace, rank, solve_linear, Echelon, ExactMatrix, Solve};
pub use ring::BaseRing;
