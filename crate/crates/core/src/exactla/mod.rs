//! Exact arithmetic in `F_{p^e}` and dense linear algebra over it.

pub mod field;
pub mod matrix;

pub use field::{find_irreducible, is_prime, Field, FieldSpec, Scalar, MAX_FIELD_ORDER};
pub use matrix::{Matrix, Rref, Subspace};
