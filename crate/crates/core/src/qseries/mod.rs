//! Exact truncated Laurent series in q and the generators and operators built on them.

mod gen;
mod ops;
mod series;

pub use gen::{
    at_scale, e2, e4, e6, eisenstein_char, eta_quotient, theta, theta1, EtaQuotientSpec,
};
pub use ops::{q_derivative, t_op, u_op, v_op};
pub use series::LaurentSeries;

/// f * g, exact up to the derived precision.
pub fn mul(f: &LaurentSeries, g: &LaurentSeries) -> LaurentSeries {
    f.mul_series(g)
}

/// 1/f; fails when every known coefficient is zero.
pub fn invert(f: &LaurentSeries) -> crate::error::Result<LaurentSeries> {
    f.invert()
}
