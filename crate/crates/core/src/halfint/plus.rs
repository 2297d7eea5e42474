use rug::{Integer, Rational};

use crate::arith::gamma0_index;
use crate::error::{Error, Result};
use crate::qseries::LaurentSeries;

/// A weight 3/2 form on Gamma_0(4N) in the plus space, with principal part q^-m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusSeries {
    level: u64,
    m: u64,
    series: LaurentSeries,
}

/// Whether exponent n lies in the plus-space support n = 0, 3 mod 4.
pub fn in_plus_support(n: i64) -> bool {
    matches!(n.rem_euclid(4), 0 | 3)
}

impl PlusSeries {
    /// Checks the principal part, the plus-space support and the
    /// denominator bound 12 varpi(N).
    pub fn new(level: u64, m: u64, series: LaurentSeries) -> Result<Self> {
        let bad = |msg: String| Err(Error::Normalization(format!("F_{level}(-{m}): {msg}")));
        let pp = series.principal_part();
        let m_i = m as i64;
        match (m, pp.as_slice()) {
            (0, []) => {}
            (_, [(e, c)]) if *e == -m_i && *c == 1 => {}
            _ => return bad(format!("principal part {pp:?} is not q^-{m}")),
        }
        for (n, _) in series.terms() {
            if !in_plus_support(n) {
                return bad(format!("nonzero coefficient at q^{n} outside the plus space"));
            }
        }
        let bound = 12 * gamma0_index(level);
        if !Integer::from(bound).is_divisible(series.denominator()) {
            return bad(format!("denominator {} does not divide {bound}", series.denominator()));
        }
        Ok(PlusSeries { level, m, series })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn series(&self) -> &LaurentSeries {
        &self.series
    }

    pub fn precision(&self) -> i64 {
        self.series.precision()
    }

    pub fn coeff(&self, n: i64) -> Result<Rational> {
        self.series.coeff(n)
    }
}
