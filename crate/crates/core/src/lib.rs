//! Exact class polynomials of Hauptmoduln at Heegner points.
//!
//! The pipeline follows the trace method: weakly holomorphic weight 3/2
//! forms F_N(-m) carry, in their coefficients, the traces of polynomials in
//! the Hauptmodul j^(N) over Heegner points; Newton-Girard turns the traces
//! into the class polynomial. A multiprecision numeric oracle checks every
//! exact answer.

pub mod arith;
pub mod error;
pub mod formlib;
pub mod halfint;
pub mod numoracle;
pub mod qseries;
pub mod quadforms;
pub mod traceeng;

pub use error::{Error, Result};
