//! High-precision numerical evaluation at Heegner points, used to check the
//! exact pipeline.

mod complex;
mod eval;
mod oracle;

pub use complex::BigComplex;
pub use eval::{eval_hauptmodul, eval_poly, eval_series, hauptmodul_series, tau_parts, Evaluation};
pub use oracle::{
    calibrate_constant_term, direct_trace_oracle, first_sensitive_disc, hauptmodul_at, polynomial_roots,
    verify_class_polynomial, Budget, VerifyReport, DEFAULT_BITS, DEFAULT_TERMS, PAIRING_TOL, RESIDUAL_TOL,
};
