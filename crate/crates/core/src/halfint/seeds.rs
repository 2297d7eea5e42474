//! Closed formulas for the seeds F_N(0) and F_N(-1), and the level-1 seed F_1(-4).

use rug::Rational;

use super::plus::{in_plus_support, PlusSeries};
use crate::arith::kronecker;
use crate::error::{Error, Result};
use crate::formlib::newforms::e2_difference;
use crate::formlib::{named_cusp_form, NewformId};
use crate::qseries::{at_scale, e2, e4, eta_quotient, theta, theta1, EtaQuotientSpec, LaurentSeries};

/// Levels with seeds.
pub const SEED_LEVELS: [u64; 6] = [1, 2, 3, 5, 7, 13];

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn eta(terms: &[(u64, i64)], p: i64) -> Result<LaurentSeries> {
    Ok(eta_quotient(&EtaQuotientSpec::new(terms)?, p))
}

/// sum of c_d E_2(d z).
fn e2_combination(terms: &[(i64, u64)], p: i64) -> LaurentSeries {
    let parts: Vec<LaurentSeries> = terms.iter().map(|&(_, d)| at_scale(e2, d, p)).collect();
    let lc: Vec<(Rational, &LaurentSeries)> =
        terms.iter().zip(&parts).map(|(&(c, _), s)| (Rational::from(c), s)).collect();
    LaurentSeries::linear_combination(&lc)
}

fn cusp(id: NewformId, scale: u64, p: i64) -> Result<LaurentSeries> {
    let inner = p.div_euclid(scale as i64) + 1;
    Ok(named_cusp_form(id, inner)?.v(scale).truncate(p))
}

/// F_N(0) as a q-series (the zero series for N = 1).
fn f0(level: u64, p: i64) -> Result<LaurentSeries> {
    let th = theta(p);
    let s = match level {
        1 => LaurentSeries::zero(p),
        2 => e2_combination(&[(24, 8), (-14, 4), (3, 2), (-1, 1)], p).div_series(&th)?.scale(&r(1, 144)),
        3 => e2_combination(&[(24, 12), (-9, 6), (-8, 4), (3, 3), (3, 2), (-1, 1)], p)
            .div_series(&th)?
            .scale(&r(1, 72)),
        5 => {
            let s20 = named_cusp_form(NewformId::S2Level20, p)?;
            e2_combination(&[(40, 20), (-15, 10), (5, 5), (-8, 4), (3, 2), (-1, 1)], p)
                .add_scaled(&r(24, 1), &s20)
                .div_series(&th)?
                .scale(&r(1, 72))
        }
        7 => {
            let e = e2_combination(&[(12, 28), (-11, 14), (13, 7), (4, 4), (-7, 2), (1, 1)], p).scale(&r(1, 24));
            let a = eta(&[(2, 7), (14, 7), (1, -3), (4, -2), (7, -3), (28, -2)], p)?;
            let b = eta(&[(1, 1), (4, 2), (14, 17), (2, -3), (7, -7), (28, -6)], p)?;
            LaurentSeries::linear_combination(&[(r(1, 1), &e), (r(-1, 2), &a), (r(5, 2), &b)]).div_series(&th)?
        }
        13 => {
            let e = e2_combination(&[(104, 52), (-39, 26), (13, 13), (-8, 4), (3, 2), (-1, 1)], p).scale(&r(1, 72));
            let sp = cusp(NewformId::S2Level26Plus, 1, p)?;
            let sm = cusp(NewformId::S2Level26Minus, 2, p)?;
            let s52 = cusp(NewformId::S2Level52, 1, p)?;
            LaurentSeries::linear_combination(&[(r(1, 1), &e), (r(2, 3), &sp), (r(2, 3), &sm), (r(1, 3), &s52)])
                .div_series(&th)?
        }
        _ => return Err(Error::UnsupportedLevel(level)),
    };
    Ok(s)
}

/// F_N(-1) as a q-series.
fn f1(level: u64, p: i64) -> Result<LaurentSeries> {
    let th1 = theta1(p);
    let e4s = |d: u64| at_scale(e4, d, p);
    // theta_1 / eta(4z)^6
    let lead = || -> Result<LaurentSeries> { th1.div_series(&eta(&[(4, 6)], p + 2)?) };
    let s = match level {
        1 => lead()?.mul_series(&e4s(4)),
        2 => lead()?
            .mul_series(&e4s(8).scale_int(16).add_scaled(&r(-1, 1), &e4s(4)))
            .scale(&r(1, 15))
            .add_scaled(&r(16, 1), &f0(2, p)?),
        3 => lead()?
            .mul_series(&e4s(12).scale_int(81).add_scaled(&r(-1, 1), &e4s(4)))
            .scale(&r(1, 80))
            .add_scaled(&r(9, 1), &f0(3, p)?),
        5 => th1.mul_series(&eta(&[(4, 4), (20, -2)], p + 2)?).add_scaled(&r(5, 1), &f0(5, p)?),
        7 => {
            let s47 = cusp(NewformId::S4Level7, 4, p)?;
            let inner = LaurentSeries::linear_combination(&[
                (r(2401, 1), &e4s(28)),
                (r(-1, 1), &e4s(4)),
                (r(-11760, 1), &s47),
            ]);
            lead()?.mul_series(&inner).scale(&r(1, 2400)).add_scaled(&r(7, 2), &f0(7, p)?)
        }
        13 => {
            let sq = e2_difference(13, p.div_euclid(4) + 1).v(4).truncate(p).pow(2)?;
            let s1 = cusp(NewformId::S4Level13Rational, 4, p)?;
            let s2 = cusp(NewformId::S4Level13Pair, 4, p)?;
            let inner = LaurentSeries::linear_combination(&[
                (r(-137, 14280), &e4s(4)),
                (r(-2197, 3570), &e4s(52)),
                (r(13, 1152), &sq),
                (r(-39, 14), &s1),
                (r(-143, 34), &s2),
            ]);
            lead()?.mul_series(&inner).add_scaled(&r(13, 7), &f0(13, p)?)
        }
        _ => return Err(Error::UnsupportedLevel(level)),
    };
    Ok(s)
}

/// The seed F_N(-m) for m in {0, 1}, known below q^precision.
pub fn seed_form(level: u64, m: u64, precision: i64) -> Result<PlusSeries> {
    let work = precision + 4;
    let s = match m {
        0 => f0(level, work)?,
        1 => f1(level, work)?,
        _ => return Err(Error::Invalid(format!("seeds exist for m = 0, 1 only, not {m}"))),
    };
    if s.precision() < precision {
        return Err(Error::Precision { index: precision - 1, precision: s.precision() });
    }
    PlusSeries::new(level, m, s.truncate(precision))
}

/// The half-integral weight Hecke map T(4) on the weight 3/2 plus space:
/// b(n) = a(4n) + (-n/2) a(n) + 2 a(n/4) for n = 0, 3 mod 4 and 0 otherwise.
pub fn plus_t4(f: &LaurentSeries) -> LaurentSeries {
    let v = f.valuation();
    let start = if v < 0 { 4 * v } else { v.div_euclid(4) };
    let prec = -((-f.precision()).div_euclid(4));
    let coeffs = (start..prec)
        .map(|n| {
            if !in_plus_support(n) {
                return Rational::new();
            }
            let mut c = f.coeff(4 * n).unwrap();
            let k = kronecker(-n, 2);
            if k != 0 {
                c += f.coeff(n).unwrap() * k;
            }
            if n % 4 == 0 {
                c += f.coeff(n / 4).unwrap() * 2u32;
            }
            c
        })
        .collect();
    LaurentSeries::new(start.min(prec), coeffs)
}

/// F_1(-4) = (F_1(-1) | T(4) - F_1(-1)) / 2, known below q^precision.
pub fn level1_extra_seed(precision: i64) -> Result<PlusSeries> {
    let f = f1(1, 4 * precision + 4)?;
    let t = plus_t4(&f);
    let s = t.add_scaled(&r(-1, 1), &f).scale(&r(1, 2));
    PlusSeries::new(1, 4, s.truncate(precision))
}
