//! P_nu^(N)(j^(N)) against Hecke images of J^(N).

use rug::Rational;

use super::poly::p_polynomials;
use crate::arith::{divisors, gamma0_index, gcd};
use crate::error::{Error, Result};
use crate::formlib::{hauptmodul, normalized_hauptmodul};
use crate::qseries::LaurentSeries;

/// Coefficient horizon nu (varpi(N) - 1) + 1 beyond which agreement is forced.
pub fn hecke_horizon(level: u64, nu: u64) -> i64 {
    (nu * (gamma0_index(level) - 1) + 1) as i64
}

/// Both sides of P_nu(j^(N)) = sum_{d | (nu, N)} (nu/d) J^(N/d) | T_{nu/d} V_d,
/// known below q^precision. The d-th term uses the Hauptmodul of level N/d
/// and the Hecke operator of that level.
pub fn hecke_sides(level: u64, nu: u64, precision: i64) -> Result<(LaurentSeries, LaurentSeries)> {
    if nu == 0 {
        return Err(Error::Invalid("nu must be positive".into()));
    }
    let p = p_polynomials(level, nu as usize)?.pop().unwrap();
    // each multiplication by j costs one coefficient
    let work = precision + nu as i64 + 1;
    let j = hauptmodul(level, work)?;
    let mut lhs = LaurentSeries::zero(work);
    for c in p.coeffs.iter().rev() {
        lhs = lhs.mul_series(&j) + LaurentSeries::monomial(Rational::from(c), 0, work);
    }
    let mut terms = Vec::new();
    for d in divisors(gcd(nu, level)) {
        let m = nu / d;
        let lower = level / d;
        let big = normalized_hauptmodul(lower, precision * m as i64 / d as i64 + 2)?;
        terms.push((Rational::from(m), big.hecke(m, 0, lower).v(d)));
    }
    let refs: Vec<(Rational, &LaurentSeries)> = terms.iter().map(|(c, s)| (c.clone(), s)).collect();
    let rhs = LaurentSeries::linear_combination(&refs).truncate(precision);
    Ok((lhs.truncate(precision), rhs))
}

/// Exact comparison of both sides through max(precision, horizon).
pub fn hecke_combination_check(level: u64, nu: u64, precision: i64) -> Result<bool> {
    let prec = precision.max(hecke_horizon(level, nu));
    let (l, r) = hecke_sides(level, nu, prec)?;
    if l.precision() < prec || r.precision() < prec {
        return Err(Error::Precision { index: prec - 1, precision: l.precision().min(r.precision()) });
    }
    Ok(l == r)
}
