//! Hauptmoduln j^(N) of the genus-zero curves X_0(N) as eta quotients.

use rug::Rational;

use crate::error::{Error, Result};
use crate::qseries::{e4, eta_quotient, EtaQuotientSpec, LaurentSeries};

/// Levels with a Hauptmodul in the table. Level 18 is genus zero as well
/// but has no eta-quotient entry there, so it is not offered.
pub const HAUPTMODUL_LEVELS: [u64; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 25];

/// Levels at which class polynomials are computed.
pub const CLASS_POLY_LEVELS: [u64; 6] = [1, 2, 3, 5, 7, 13];

/// Eta-quotient exponents (d, r_d) of j^(N); `None` for level 1, which is built as E_4^3 / Delta.
pub fn eta_spec(level: u64) -> Result<Option<EtaQuotientSpec>> {
    let terms: &[(u64, i64)] = match level {
        1 => return Ok(None),
        2 => &[(1, 24), (2, -24)],
        3 => &[(1, 12), (3, -12)],
        4 => &[(1, 8), (4, -8)],
        5 => &[(1, 6), (5, -6)],
        6 => &[(2, 3), (3, 9), (1, -3), (6, -9)],
        7 => &[(1, 4), (7, -4)],
        8 => &[(1, 4), (4, 2), (2, -2), (8, -4)],
        9 => &[(1, 3), (9, -3)],
        10 => &[(2, 1), (5, 5), (1, -1), (10, -5)],
        12 => &[(4, 4), (6, 2), (2, -2), (12, -4)],
        13 => &[(1, 2), (13, -2)],
        16 => &[(1, 2), (8, 1), (2, -1), (16, -2)],
        25 => &[(1, 1), (25, -1)],
        _ => return Err(Error::UnsupportedLevel(level)),
    };
    Ok(Some(EtaQuotientSpec::new(terms)?))
}

/// j^(N) = q^-1 + a_0 + a_1 q + ... known below q^precision.
pub fn hauptmodul(level: u64, precision: i64) -> Result<LaurentSeries> {
    match eta_spec(level)? {
        Some(spec) => Ok(eta_quotient(&spec, precision)),
        None => {
            let delta = eta_quotient(&EtaQuotientSpec::new(&[(1, 24)])?, precision + 2);
            let num = e4(precision + 1).pow(3)?;
            Ok(num.mul_series(&delta.invert()?).truncate(precision))
        }
    }
}

/// J^(N) = j^(N) minus its constant term.
pub fn normalized_hauptmodul(level: u64, precision: i64) -> Result<LaurentSeries> {
    let j = hauptmodul(level, precision)?;
    let a0 = j.coeff(0)?;
    Ok(j.add_scaled(&Rational::from(-1), &LaurentSeries::monomial(a0, 0, precision)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one() {
        let j = hauptmodul(1, 3).unwrap();
        assert_eq!(j, LaurentSeries::from_i64(-1, &[1, 744, 196884, 21493760]));
        let big = normalized_hauptmodul(1, 2).unwrap();
        assert_eq!(big.coeff(0).unwrap(), 0);
        assert_eq!(big.coeff(1).unwrap(), 196884);
    }

    #[test]
    fn table_openings() {
        for n in HAUPTMODUL_LEVELS {
            let j = hauptmodul(n, 40).unwrap();
            assert_eq!(j.valuation(), -1, "level {n}");
            assert_eq!(j.coeff(-1).unwrap(), 1);
            assert!(j.is_integral());
            assert_eq!(normalized_hauptmodul(n, 40).unwrap().coeff(0).unwrap(), 0);
        }
        assert_eq!(hauptmodul(7, 1).unwrap().coeff(0).unwrap(), -4);
        assert_eq!(hauptmodul(2, 1).unwrap().coeff(0).unwrap(), -24);
        assert_eq!(hauptmodul(18, 10), Err(Error::UnsupportedLevel(18)));
    }
}
