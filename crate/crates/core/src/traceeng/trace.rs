//! Traces of P_nu^(N)(j^(N)) over Heegner points from family coefficients.

use rug::Rational;

use super::constants::constant_c;
use super::families::Families;
use crate::arith::{divisors, gamma0_index, gcd};
use crate::error::{Error, Result};
use crate::halfint::NormalizationRule;
use crate::quadforms::{class_number_hn, hurwitz_h1};

/// Tr_1..Tr_h for one (N, D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceVector {
    pub level: u64,
    pub disc: i64,
    pub values: Vec<Rational>,
}

fn check_disc(d: i64) -> Result<()> {
    if d <= 0 || !matches!(d % 4, 0 | 3) {
        return Err(Error::BadDiscriminant(d));
    }
    Ok(())
}

/// Tr_nu^(N)(D) using families from `families`.
///
/// Tr = -nu sum_{d | nu} (1/d) (b_L(-nu^2/d^2; D) - 24 H_1(D)/varpi(L))
///      - H_N(D) c_{N,nu},  L = N/(N,d).
///
/// The Eisenstein correction uses the level L of the family whose coefficient
/// is read, since that is the level at which the shadow was cancelled.
pub fn trace_with(families: &Families, level: u64, disc: i64, nu: u64) -> Result<Rational> {
    check_disc(disc)?;
    if nu == 0 {
        return Err(Error::Invalid("nu must be positive".into()));
    }
    let h1 = hurwitz_h1(disc)?;
    let hn = class_number_hn(level, disc)?;
    let mut sum = Rational::new();
    for d in divisors(nu) {
        let l = level / gcd(level, d);
        let m = (nu / d) * (nu / d);
        let fam = families.get(l, nu * nu, disc + 1)?;
        let b = fam.btilde(m, disc)?;
        let corr = Rational::from(24 * &h1) / gamma0_index(l);
        sum += (b - corr) / d;
    }
    Ok(-sum * nu - hn * constant_c(level, nu))
}

/// Tr_nu^(N)(D) with freshly generated families under the default rule.
pub fn trace(level: u64, disc: i64, nu: u64) -> Result<Rational> {
    trace_with(&Families::new(NormalizationRule::square_delta()), level, disc, nu)
}

/// Tr_1..Tr_count.
pub fn traces_with(families: &Families, level: u64, disc: i64, count: usize) -> Result<TraceVector> {
    check_disc(disc)?;
    let m = (count * count) as u64;
    // warm both families at full depth so each lookup hits the same object
    families.get(level, m.max(1), disc + 1)?;
    if level > 1 && count as u64 >= level {
        families.get(1, m, disc + 1)?;
    }
    let values = (1..=count as u64).map(|nu| trace_with(families, level, disc, nu)).collect::<Result<_>>()?;
    Ok(TraceVector { level, disc, values })
}
