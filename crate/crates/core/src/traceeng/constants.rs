//! The rational constants c_{N,nu} and the Moebius-zeta ratios behind them.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::Rational;

use crate::arith::{divisors, euler_phi, gcd, mobius};

/// r(n) with sum over c > 0 of mu(nc)/(nc)^2 = r(n)/zeta(2).
pub fn mobius_zeta_ratio(n: u64) -> Rational {
    static MEMO: OnceLock<Mutex<HashMap<u64, Rational>>> = OnceLock::new();
    assert!(n > 0);
    if n == 1 {
        return Rational::from(1);
    }
    let mu = mobius(n);
    if mu == 0 {
        return Rational::new();
    }
    let memo = MEMO.get_or_init(Default::default);
    if let Some(r) = memo.lock().unwrap().get(&n) {
        return r.clone();
    }
    let mut acc = Rational::new();
    for d in divisors(n) {
        if d < n {
            acc += mobius_zeta_ratio(d) * mobius(d);
        }
    }
    let nn = n as i128 * n as i128 - 1;
    let r = acc * Rational::from((mu, 1)) / Rational::from(nn);
    memo.lock().unwrap().insert(n, r.clone());
    r
}

fn inner(nu_over_d: u64, d_over_l: u64, l: u64, scale: u64) -> Rational {
    let mut acc = Rational::new();
    for x in divisors(nu_over_d) {
        let mx = mobius(x);
        if mx == 0 {
            continue;
        }
        for y in divisors(d_over_l) {
            let my = mobius(y);
            if my == 0 {
                continue;
            }
            let m = scale * x * y * l / gcd(x, y * l);
            let r = mobius_zeta_ratio(m);
            if r != 0 {
                acc += r * (mx * my);
            }
        }
    }
    acc
}

/// c_{N,nu}, the constant with 2 F_{1,N,nu} = P_nu(j^(N)) + c_{N,nu}.
///
/// Every inner sum over c is r(M) 6/pi^2, which cancels the 4 pi^2 in front.
/// When N divides nu, only d with N | d contribute, and for those the sum over
/// c with (Nc, nu) = d is the sum over c' = Nc with (c', nu) = d, so the inner
/// sums are the N-free ones over x | nu/d and y | d/l.
pub fn constant_c(level: u64, nu: u64) -> Rational {
    assert!(level > 0 && nu > 0);
    let mut total = Rational::new();
    for d in divisors(nu) {
        if nu.is_multiple_of(level) && d % level != 0 {
            continue;
        }
        let scale = if nu.is_multiple_of(level) { 1 } else { level };
        for l in divisors(d) {
            let s = inner(nu / d, d / l, l, scale);
            if s == 0 {
                continue;
            }
            let w = Rational::from((euler_phi(d) * l, euler_phi(l) * d * d));
            total += w * s;
        }
    }
    total * Rational::from(24 * nu)
}
