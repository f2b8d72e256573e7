//! Multidimensional burst-correcting codes for errors of Hamming weight at most 2.
//!
//! A codeword is a D-dimensional binary array. When two positions are in error,
//! the burst model constrains their relative location: bounded Chebyshev distance
//! (`Linf`), bounded Manhattan distance (`L1`), or an axis-parallel line with
//! bounded distance (`Straight`). This crate builds the parity-check matrices for
//! the known constructions in all three models, decodes them algorithmically,
//! verifies them exhaustively at small scale, and evaluates the associated
//! excess-redundancy bounds.

pub mod algebra;
pub mod bch2;
pub mod bounds;
pub mod codes;
pub mod designs;
pub mod indexing;
pub mod leecode;
pub mod models;
pub mod verify;

mod error;

pub use error::{Error, Result};

/// Size limits for table building and matrix materialization.
///
/// Exhaustive enumeration of error patterns is the backbone of verification;
/// these caps keep it at desk scale. All limits can be raised by the caller.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Maximum number of array cells (`side^D`) for enumeration.
    pub max_cells: u64,
    /// Maximum number of error patterns for syndrome tables.
    pub max_patterns: u64,
    /// Maximum number of bits in a materialized parity-check matrix.
    pub max_matrix_bits: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_cells: 1 << 20,
            max_patterns: 1 << 24,
            max_matrix_bits: 1 << 28,
        }
    }
}
