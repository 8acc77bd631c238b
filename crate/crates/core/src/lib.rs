//! Magic squares of subtraction.
//!
//! A line's residuum is the alternating sum of its entries sorted in
//! decreasing order; a square is magic (of subtraction) when every row,
//! column and both diagonals share one residuum.
//!
//! - [`square`]: the square type, residuum, line extraction, verification
//! - [`format`]: text and JSON encodings
//! - [`construct`]: odd-order skew-wrap construction and block composition
//!   for orders divisible by four
//! - [`transform`]: the eight symmetries, canonical forms, permutations
//! - [`search`]: exhaustive enumeration and randomized search
//! - [`catalog`]: append-only deduplicated result store

pub mod catalog;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod search;
pub mod square;
pub mod transform;

pub use error::{Error, Result};
pub use square::{
    bracket_mod, extract_lines, residuum, verify, Line, LineOrigin, Square, VerificationReport,
};
