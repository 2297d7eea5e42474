//! Dimensions of M_k(Gamma_0(M)) and S_k(Gamma_0(M)) for even k, and the Sturm bound.

use crate::arith::{divisors, euler_phi, factor, gamma0_index, gcd, kronecker};
use crate::error::{Error, Result};

struct Invariants {
    index: i64,
    nu2: i64,
    nu3: i64,
    cusps: i64,
    genus: i64,
}

fn invariants(level: u64) -> Invariants {
    let primes: Vec<u64> = factor(level).iter().map(|&(p, _)| p).collect();
    let index = gamma0_index(level) as i64;
    let nu2 = if level.is_multiple_of(4) {
        0
    } else {
        primes.iter().map(|&p| 1 + kronecker(-4, p)).product()
    };
    let nu3 = if level.is_multiple_of(9) {
        0
    } else {
        primes.iter().map(|&p| 1 + kronecker(-3, p)).product()
    };
    let cusps: i64 = divisors(level)
        .iter()
        .map(|&d| euler_phi(gcd(d, level / d)) as i64)
        .sum();
    // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
    let genus = (12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
    Invariants { index, nu2, nu3, cusps, genus }
}

fn check_weight(k: i64) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::Invalid(format!("odd weight {k} has no forms with trivial character")));
    }
    Ok(())
}

/// dim S_k(Gamma_0(M)).
pub fn dim_sk(k: i64, level: u64) -> Result<i64> {
    check_weight(k)?;
    let inv = invariants(level);
    Ok(match k {
        k if k <= 0 => 0,
        2 => inv.genus,
        _ => {
            (k - 1) * (inv.genus - 1) + (k / 2 - 1) * inv.cusps + inv.nu2 * (k / 4) + inv.nu3 * (k / 3)
        }
    })
}

/// dim M_k(Gamma_0(M)).
pub fn dim_mk(k: i64, level: u64) -> Result<i64> {
    check_weight(k)?;
    let inv = invariants(level);
    Ok(match k {
        k if k < 0 => 0,
        0 => 1,
        2 => inv.genus + inv.cusps - 1,
        _ => dim_sk(k, level)? + inv.cusps,
    })
}

pub fn genus(level: u64) -> i64 {
    invariants(level).genus
}

/// Number of leading coefficients that determine a form in M_k(Gamma_0(M)):
/// ceil(k [SL_2(Z) : Gamma_0(M)] / 12) + 1.
pub fn sturm_bound(k: i64, level: u64) -> i64 {
    let index = invariants(level).index;
    (k * index + 11).div_euclid(12) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_dimensions() {
        assert_eq!(dim_mk(0, 1).unwrap(), 1);
        assert_eq!(dim_mk(-2, 5).unwrap(), 0);
        assert_eq!(dim_sk(2, 26).unwrap(), 2);
        assert_eq!(dim_mk(2, 26).unwrap(), 5);
        assert_eq!(dim_mk(2, 52).unwrap(), 10);
        assert_eq!(dim_mk(4, 13).unwrap(), 5);
        assert_eq!(dim_sk(4, 13).unwrap(), 3);
        assert_eq!(dim_mk(4, 7).unwrap(), 3);
        assert_eq!(dim_sk(4, 7).unwrap(), 1);
        assert_eq!(dim_sk(2, 11).unwrap(), 1);
        assert_eq!(dim_sk(12, 1).unwrap(), 1);
        assert_eq!(dim_mk(12, 1).unwrap(), 2);
        assert_eq!(dim_sk(2, 20).unwrap(), 1);
        assert!(dim_mk(3, 4).is_err());
    }

    #[test]
    fn genus_zero_levels() {
        for n in [1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
            assert_eq!(genus(n), 0, "level {n}");
        }
        assert_eq!(genus(11), 1);
    }

    #[test]
    fn sturm() {
        assert_eq!(sturm_bound(12, 1), 2);
        assert_eq!(sturm_bound(2, 52), 15);
    }
}
