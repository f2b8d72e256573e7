//! Finite-field arithmetic and GF(2) linear algebra.
//!
//! Everything here is immutable after construction and safe to share across
//! threads.

mod gf2m;
mod matrix;
mod prime;

pub use gf2m::{BinaryExtField, MAX_DEGREE, PRIMITIVE_POLYS};
pub use matrix::Gf2Matrix;
pub use prime::{is_prime, lee_value, lee_weight, PrimeExtField, PrimeField};
