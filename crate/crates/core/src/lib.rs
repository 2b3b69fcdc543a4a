//! Exact construction and verification of Galilei-invariant wave equations.

// index loops mirror the tensor notation
#![allow(clippy::needless_range_loop)]

pub mod appendix;
pub mod beta;
pub mod catalog;
pub mod classify;
pub mod covariance;
pub mod error;
pub mod expr;
pub mod interaction;
pub mod linalg;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod reps;
pub mod ring;
pub mod sample;
pub mod scalar;
pub mod spin;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::{Matrix, PMatrix, SMatrix};
pub use poly::{sym, Poly, Sym};
pub use ring::Ring;
pub use scalar::Scalar;
