//! Evaluation of q-expansions at points of the upper half-plane.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Float, Integer};

use super::complex::BigComplex;
use crate::error::{Error, Result};
use crate::formlib::hauptmodul;
use crate::qseries::LaurentSeries;
use crate::quadforms::HeegnerPoint;

/// A value together with the size of q and an estimate of the neglected tail.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigComplex,
    pub q_abs: f64,
    /// Largest of the last few terms, divided by 1 - |q|.
    pub tail_bound: f64,
    /// log2 of the largest term; compared with the value to detect cancellation.
    pub max_term_log2: f64,
}

/// tau = (-b + i sqrt(D)) / (2a) as floats.
pub fn tau_parts(p: &HeegnerPoint, bits: u32) -> Result<(Float, Float)> {
    if p.a <= 0 || p.d <= 0 {
        return Err(Error::Numeric(format!("({}, {}, {}) is not in the upper half-plane", p.a, p.b, p.d)));
    }
    let two_a = Float::with_val(bits, 2 * p.a);
    let re = Float::with_val(bits, -p.b) / &two_a;
    let im = Float::with_val(bits, p.d).sqrt() / two_a;
    Ok((re, im))
}

/// Sum of a_n q^n over the first `terms` stored exponents of `f` at `tau`.
pub fn eval_series(f: &LaurentSeries, tau: &HeegnerPoint, terms: usize, bits: u32) -> Result<Evaluation> {
    let (re, im) = tau_parts(tau, bits)?;
    let q = BigComplex::exp_2pi_i(&re, &im);
    let q_abs = q.abs().to_f64();
    let v = f.valuation();
    let end = f.precision().min(v + terms as i64);
    let den = Float::with_val(bits, f.denominator());
    let mut qn = q.powi(v);
    let mut acc = BigComplex::zero(bits);
    let mut max_log2 = f64::NEG_INFINITY;
    let mut last = Vec::new();
    for n in v..end {
        let c = f.coeff_num(n)?;
        if *c != 0 {
            let t = qn.scale(&Float::with_val(bits, c));
            let size = t.abs();
            let l = size.clone().log2().to_f64();
            if l > max_log2 {
                max_log2 = l;
            }
            if end - n <= 8 {
                last.push(size.to_f64());
            }
            acc = &acc + &t;
        }
        qn = &qn * &q;
    }
    let value = BigComplex { re: acc.re / &den, im: acc.im / &den };
    let tail = last.into_iter().fold(0.0f64, f64::max) / den.to_f64() / (1.0 - q_abs).max(f64::MIN_POSITIVE);
    Ok(Evaluation { value, q_abs, tail_bound: tail, max_term_log2: max_log2 - den.to_f64().log2() })
}

/// j^(N) known to at least `terms` coefficients, shared between callers.
pub fn hauptmodul_series(level: u64, terms: usize) -> Result<Arc<LaurentSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<LaurentSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let want = terms as i64 - 1;
    if let Some(s) = cache.lock().unwrap().get(&level) {
        if s.precision() >= want {
            return Ok(s.clone());
        }
    }
    let s = Arc::new(hauptmodul(level, want)?);
    cache.lock().unwrap().insert(level, s.clone());
    Ok(s)
}

/// j^(N)(tau) from `terms` coefficients, raising the working precision when
/// cancellation eats more than half of it.
pub fn eval_hauptmodul(level: u64, tau: &HeegnerPoint, terms: usize, bits: u32) -> Result<Evaluation> {
    let f = hauptmodul_series(level, terms)?;
    let mut bits = bits;
    loop {
        let e = eval_series(&f, tau, terms, bits)?;
        let value_log2 = e.value.abs().log2().to_f64().max(0.0);
        let lost = e.max_term_log2 - value_log2;
        if lost < bits as f64 / 2.0 || bits >= 1 << 15 {
            return Ok(e);
        }
        bits *= 2;
    }
}

/// Horner evaluation of an integer polynomial, constant term first.
pub fn eval_poly(coeffs: &[Integer], x: &BigComplex) -> BigComplex {
    let bits = x.bits();
    let mut acc = BigComplex::zero(bits);
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + &BigComplex::from_integer(bits, c);
    }
    acc
}
