//! Atkin U, the V operator, Hecke T on Fourier expansions, and the q-derivative.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::LaurentSeries;
use crate::arith::{divisors, gcd};

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// f | U_d: the coefficient at n becomes a_{dn}.
pub fn u_op(f: &LaurentSeries, d: u64) -> LaurentSeries {
    assert!(d > 0);
    if d == 1 {
        return f.clone();
    }
    let d = d as i64;
    let prec = div_ceil(f.precision(), d);
    let start = div_ceil(f.valuation(), d).min(prec);
    let nums = (start..prec).map(|n| f.coeff_num(d * n).unwrap().clone()).collect();
    LaurentSeries::from_parts(start, nums, f.denominator().clone())
}

/// f | V_d: exponents are scaled by d.
pub fn v_op(f: &LaurentSeries, d: u64) -> LaurentSeries {
    assert!(d > 0);
    if d == 1 {
        return f.clone();
    }
    let d = d as i64;
    let start = f.valuation() * d;
    let prec = f.precision() * d;
    let mut nums = vec![Integer::new(); (prec - start) as usize];
    for n in f.valuation()..f.precision() {
        nums[((n * d) - start) as usize] = f.coeff_num(n).unwrap().clone();
    }
    LaurentSeries::from_parts(start, nums, f.denominator().clone())
}

/// Hecke operator T_m of integral weight `k` on level `level`:
///
/// b_n = sum over d | (m, n) of chi(d) d^(k-1) a_{mn/d^2},
///
/// with chi(d) = 1 when gcd(d, level) = 1 and 0 otherwise. Negative n are
/// treated the same way using divisors of gcd(m, |n|).
pub fn t_op(f: &LaurentSeries, m: u64, k: i64, level: u64) -> LaurentSeries {
    assert!(m > 0);
    if m == 1 {
        return f.clone();
    }
    let mi = m as i64;
    let mut prec = div_ceil(f.precision(), mi);
    let v = f.valuation();
    let mut start = if v < 0 { v * mi } else { div_ceil(v, mi) }.min(prec);
    let weights: Vec<(u64, Rational)> = divisors(m)
        .into_iter()
        .filter(|&d| gcd(d, level) == 1)
        .map(|d| {
            let w = if k >= 1 {
                Rational::from(Integer::from(d).pow((k - 1) as u32))
            } else {
                Rational::from((Integer::from(1), Integer::from(d).pow((1 - k) as u32)))
            };
            (d, w)
        })
        .collect();
    if f.precision() <= 0 {
        // for negative n the d > 1 terms reach up towards zero, past what is known
        let p = f.precision();
        if let Some(n) = (start..prec).find(|&n| {
            weights.iter().any(|(d, _)| {
                let d = *d as i64;
                n % d == 0 && mi * n / (d * d) >= p
            })
        }) {
            prec = n;
            start = start.min(prec);
        }
    }
    let coeffs = (start..prec)
        .map(|n| {
            let mut acc = Rational::new();
            for (d, w) in &weights {
                let di = *d as i64;
                if n % di != 0 {
                    continue;
                }
                let idx = mi * n / (di * di);
                let a = f.coeff(idx).unwrap();
                if a != 0 {
                    acc += a * w;
                }
            }
            acc
        })
        .collect();
    LaurentSeries::new(start, coeffs)
}

/// q d/dq: the coefficient at n becomes n a_n.
pub fn q_derivative(f: &LaurentSeries) -> LaurentSeries {
    let nums = (f.valuation()..f.precision())
        .map(|n| Integer::from(f.coeff_num(n).unwrap() * n))
        .collect();
    LaurentSeries::from_parts(f.valuation(), nums, f.denominator().clone())
}

impl LaurentSeries {
    pub fn u(&self, d: u64) -> LaurentSeries {
        u_op(self, d)
    }

    pub fn v(&self, d: u64) -> LaurentSeries {
        v_op(self, d)
    }

    pub fn hecke(&self, m: u64, k: i64, level: u64) -> LaurentSeries {
        t_op(self, m, k, level)
    }
}
