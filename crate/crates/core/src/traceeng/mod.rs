//! Traces, the polynomials P_nu^(N), and class polynomial assembly.

mod classpoly;
mod constants;
mod families;
mod hecke;
mod poly;
mod trace;

pub use classpoly::{class_polynomial, class_polynomial_with, render_poly, ClassPolynomial};
pub use constants::{constant_c, mobius_zeta_ratio};
pub use families::Families;
pub use hecke::{hecke_combination_check, hecke_horizon, hecke_sides};
pub use poly::{from_elementary, newton_girard, p_polynomials, power_sums, PPolynomial};
pub use trace::{trace, trace_with, traces_with, TraceVector};
