//! Empirical Frobenius-trace distributions (cycle types of squarefree
//! polynomials, elliptic curves, genus-2 hyperelliptic curves over prime
//! fields) and exact Sato-Tate moment sequences and trace measures for
//! the compact groups arising in genus up to 3.

pub mod artin;
pub mod curves;
pub mod error;
pub mod ff_poly;
pub mod stats;
pub mod stgroups;

pub use error::{Error, Result};
