//! Foam-based `sl(2)` link homology over `Z[i][a]`.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in `foamhom-cli`.

#![no_std]
extern crate alloc;

pub mod arith;
pub mod foamval;
pub mod frobenius;
pub mod diagram;
pub mod state;
pub mod complex;
pub mod matrix;
pub mod reduce;
pub mod homology;
pub mod moves;
pub mod oracle;
