//! The polynomials P_nu^(N), power sums and the Newton-Girard recursion.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::formlib::hauptmodul;

/// P_nu^(N)(x), coefficients from the constant term up; monic of degree nu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial {
    pub nu: usize,
    pub coeffs: Vec<Integer>,
}

impl PPolynomial {
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
    }
}

/// P_0 .. P_count for level N from the recurrence
/// P_{nu+1} = x P_nu - sum_{l <= nu} a_{nu-l} P_l - nu a_nu,
/// where j^(N) = q^-1 + a_0 + a_1 q + ...
pub fn p_polynomials(level: u64, count: usize) -> Result<Vec<PPolynomial>> {
    let j = hauptmodul(level, count as i64 + 2)?;
    let a: Vec<Integer> = (0..=count as i64).map(|n| j.coeff_int(n)).collect::<Result<_>>()?;
    let mut out = vec![PPolynomial { nu: 0, coeffs: vec![Integer::from(1)] }];
    for nu in 0..count {
        let mut next = vec![Integer::new(); nu + 2];
        for (i, c) in out[nu].coeffs.iter().enumerate() {
            next[i + 1] += c;
        }
        for l in 0..=nu {
            for (i, c) in out[l].coeffs.iter().enumerate() {
                next[i] -= Integer::from(&a[nu - l] * c);
            }
        }
        next[0] -= Integer::from(&a[nu] * nu as u64);
        out.push(PPolynomial { nu: nu + 1, coeffs: next });
    }
    Ok(out)
}

/// Power sums s_1..s_h of the Hauptmodul values from traces Tr_1..Tr_h.
///
/// With S_nu = w Tr_nu = sum of P_nu(x_i), the triangular system
/// s_nu = S_nu - sum_{k < nu} c_{nu,k} s_k, s_0 = h, gives the s_nu.
/// `polys` must hold P_0..P_h.
pub fn power_sums(traces: &[Rational], polys: &[PPolynomial], h: usize, w: u32) -> Result<Vec<Rational>> {
    if polys.len() <= traces.len() {
        return Err(Error::Invalid("need P_nu for every trace".into()));
    }
    let mut s = vec![Rational::from(h as u64)];
    for (i, tr) in traces.iter().enumerate() {
        let nu = i + 1;
        let p = &polys[nu];
        if p.coeffs.len() != nu + 1 || p.coeffs[nu] != 1 {
            return Err(Error::Invalid(format!("P_{nu} is not monic of degree {nu}")));
        }
        let mut v = Rational::from(tr * w);
        for k in 0..nu {
            v -= Rational::from(&p.coeffs[k] * &s[k]);
        }
        s.push(v);
    }
    s.remove(0);
    Ok(s)
}

/// Elementary symmetric values e_1..e_h from power sums p_1..p_h:
/// k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i.
pub fn newton_girard(p: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::from(1)];
    for k in 1..=p.len() {
        let mut acc = Rational::new();
        for i in 1..=k {
            let t = Rational::from(&e[k - i] * &p[i - 1]);
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / k as u64);
    }
    e.remove(0);
    e
}

/// Coefficients of prod (x - x_i), constant term first, from e_1..e_h.
pub fn from_elementary(e: &[Rational]) -> Vec<Rational> {
    let h = e.len();
    let mut c = vec![Rational::new(); h + 1];
    c[h] = Rational::from(1);
    for (k, ek) in e.iter().enumerate() {
        let k = k + 1;
        c[h - k] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn level_seven_polynomials() {
        let p = p_polynomials(7, 4).unwrap();
        assert_eq!(p[0].coeffs, ints(&[1]));
        assert_eq!(p[1].coeffs, ints(&[4, 1]));
        assert_eq!(p[2].coeffs, ints(&[12, 8, 1]));
        assert_eq!(p[3].coeffs, ints(&[16, 42, 12, 1]));
        assert_eq!(p[4].coeffs, ints(&[28, 160, 88, 16, 1]));
    }

    #[test]
    fn level_one_first_polynomials() {
        let p = p_polynomials(1, 2).unwrap();
        assert_eq!(p[1].coeffs, ints(&[-744, 1]));
        assert_eq!(p[2].coeffs, ints(&[159768, -1488, 1]));
    }

    #[test]
    fn level_seven_power_sums() {
        let p = p_polynomials(7, 4).unwrap();
        let tr: Vec<Rational> = [-14, 54, -224, -1266].iter().map(|&x| Rational::from(x)).collect();
        let s = power_sums(&tr, &p, 4, 1).unwrap();
        assert_eq!(s, [-30, 246, -1980, 13454].map(Rational::from).to_vec());
        let e = newton_girard(&s);
        assert_eq!(e, [-30, 327, -1470, 2401].map(Rational::from).to_vec());
        // every root has negative real part, so all coefficients are positive
        assert_eq!(from_elementary(&e), [2401, 1470, 327, 30, 1].map(Rational::from).to_vec());
    }

    #[test]
    fn single_root() {
        assert_eq!(newton_girard(&[Rational::from(7)]), vec![Rational::from(7)]);
    }
}
