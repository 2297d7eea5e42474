//! Standard q-expansions: eta quotients, theta functions and Eisenstein series.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::Integer;

use super::LaurentSeries;
use crate::arith::divisors;
use crate::error::{Error, Result};

/// A product of eta(d z)^(r_d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaQuotientSpec {
    terms: BTreeMap<u64, i64>,
}

impl EtaQuotientSpec {
    /// Rejects specs whose q-valuation sum(d r_d)/24 is not an integer.
    pub fn new(terms: &[(u64, i64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(d, r) in terms {
            if d == 0 {
                return Err(Error::Invalid("eta scale must be positive".into()));
            }
            *map.entry(d).or_insert(0) += r;
        }
        map.retain(|_, r| *r != 0);
        let spec = EtaQuotientSpec { terms: map };
        let num = spec.valuation_numerator();
        if num % 24 != 0 {
            return Err(Error::FractionalValuation { numerator: num });
        }
        Ok(spec)
    }

    fn valuation_numerator(&self) -> i64 {
        self.terms.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation_numerator() / 24
    }

    /// Weight sum(r_d)/2, doubled to stay integral.
    pub fn double_weight(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&d, &r)| (d, r))
    }
}

/// Expansion of the eta quotient to precision `precision`.
///
/// The product of (1 - q^{dn})^{r_d} is built from its logarithmic
/// derivative: n g_n = sum_{k=1}^{n} l_k g_{n-k}, where
/// l_k = -sum_{d | k} r_d d sigma_1(k/d).
pub fn eta_quotient(spec: &EtaQuotientSpec, precision: i64) -> LaurentSeries {
    let v = spec.valuation();
    if precision <= v {
        return LaurentSeries::zero(precision);
    }
    let len = (precision - v) as usize;
    let sig = sigma1_table(len);
    let mut ell = vec![0i64; len];
    for (k, slot) in ell.iter_mut().enumerate().skip(1) {
        for (d, r) in spec.terms() {
            if (k as u64).is_multiple_of(d) {
                *slot -= r * d as i64 * sig[k / d as usize] as i64;
            }
        }
    }
    let nz: Vec<(usize, i64)> = ell.iter().copied().enumerate().filter(|&(_, l)| l != 0).collect();
    let mut g: Vec<Integer> = Vec::with_capacity(len);
    g.push(Integer::from(1));
    for n in 1..len {
        let mut acc = Integer::new();
        for &(k, l) in &nz {
            if k > n {
                break;
            }
            acc += &g[n - k] * l;
        }
        acc.div_exact_u_mut(n as u32);
        g.push(acc);
    }
    LaurentSeries::from_integers(v, g)
}

fn sigma_table(len: usize, k: u32) -> Vec<Integer> {
    let mut t = vec![Integer::new(); len];
    for d in 1..len {
        let dk = Integer::from(d).pow(k);
        let mut m = d;
        while m < len {
            t[m] += &dk;
            m += d;
        }
    }
    t
}

fn sigma1_table(len: usize) -> Vec<u64> {
    let mut t = vec![0u64; len];
    for d in 1..len {
        let mut m = d;
        while m < len {
            t[m] += d as u64;
            m += d;
        }
    }
    t
}

/// theta(z) = sum over n in Z of q^(n^2).
pub fn theta(precision: i64) -> LaurentSeries {
    theta_signed(precision, false)
}

/// theta_1(z) = sum over n in Z of (-1)^n q^(n^2).
pub fn theta1(precision: i64) -> LaurentSeries {
    theta_signed(precision, true)
}

fn theta_signed(precision: i64, alternate: bool) -> LaurentSeries {
    let len = precision.max(0) as usize;
    let mut c = vec![Integer::new(); len];
    let mut n = 0usize;
    while n * n < len {
        let sign = if alternate && n % 2 == 1 { -1 } else { 1 };
        c[n * n] = Integer::from(if n == 0 { 1 } else { 2 * sign });
        n += 1;
    }
    LaurentSeries::from_integers(0, c)
}

/// E_2 = 1 - 24 sum sigma_1(n) q^n.
pub fn e2(precision: i64) -> LaurentSeries {
    eisenstein(precision, 1, -24)
}

/// E_4 = 1 + 240 sum sigma_3(n) q^n.
pub fn e4(precision: i64) -> LaurentSeries {
    eisenstein(precision, 3, 240)
}

/// E_6 = 1 - 504 sum sigma_5(n) q^n.
pub fn e6(precision: i64) -> LaurentSeries {
    eisenstein(precision, 5, -504)
}

fn eisenstein(precision: i64, k: u32, factor: i64) -> LaurentSeries {
    let len = precision.max(0) as usize;
    let mut c = sigma_table(len, k);
    for x in c.iter_mut() {
        *x *= factor;
    }
    if len > 0 {
        c[0] = Integer::from(1);
    }
    LaurentSeries::from_integers(0, c)
}

/// Weight-2 Eisenstein series attached to a real character chi.
///
/// With `swap = false` this is `constant + sum_n (sum_{d|n} chi(d) d) q^n`,
/// with `swap = true` it is `sum_n (sum_{d|n} chi(n/d) d) q^n`. For the
/// quadratic character mod 13 the constant is -1.
pub fn eisenstein_char(precision: i64, chi: &dyn Fn(u64) -> i64, constant: i64, swap: bool) -> LaurentSeries {
    let len = precision.max(0) as usize;
    let mut c = vec![Integer::new(); len];
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        let n = n as u64;
        let s: i64 = divisors(n)
            .into_iter()
            .map(|d| if swap { chi(n / d) * d as i64 } else { chi(d) * d as i64 })
            .sum();
        *slot = Integer::from(s);
    }
    if len > 0 && !swap {
        c[0] = Integer::from(constant);
    }
    LaurentSeries::from_integers(0, c)
}

/// f(d z) to precision `precision`, for any expansion generator `f`.
pub fn at_scale(f: impl Fn(i64) -> LaurentSeries, d: u64, precision: i64) -> LaurentSeries {
    let inner = precision.div_euclid(d as i64) + 1;
    f(inner).v(d).truncate(precision)
}
