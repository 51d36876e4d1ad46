//! Closed-form decompositions of antidiagonal and antidiagonalizable complex matrices.

pub mod antidiag;
mod clusters;
pub mod duodiag;
pub mod eigenjordan;
pub mod error;
pub mod matcore;
pub mod permsim;
pub mod sampling;
pub mod schur;

pub use error::{Error, Result};
