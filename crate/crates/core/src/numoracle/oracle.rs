//! Numerical cross-checks of the exact pipeline.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use super::complex::BigComplex;
use super::eval::{eval_hauptmodul, eval_poly};
use crate::arith::gamma0_index;
use crate::error::{Error, Result};
use crate::halfint::seed_form;
use crate::quadforms::{heegner_point, heegner_representatives, BinaryQF, HeegnerClassSet};
use crate::traceeng::{p_polynomials, trace_with, ClassPolynomial, Families};

pub const DEFAULT_TERMS: usize = 1500;
pub const DEFAULT_BITS: u32 = 256;
pub const RESIDUAL_TOL: f64 = 1e-6;
pub const PAIRING_TOL: f64 = 1e-4;

/// Numeric budget shared by the oracle routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub terms: usize,
    pub bits: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { terms: DEFAULT_TERMS, bits: DEFAULT_BITS }
    }
}

/// j^(N)(alpha_Q) at one form with N | a.
pub fn hauptmodul_at(level: u64, q: &BinaryQF, budget: Budget) -> Result<BigComplex> {
    if q.a % level as i64 != 0 {
        return Err(Error::Invalid(format!("{q} is not a Heegner form of level {level}")));
    }
    Ok(eval_hauptmodul(level, &heegner_point(q), budget.terms, budget.bits)?.value)
}

fn class_values(set: &HeegnerClassSet, budget: Budget) -> Result<Vec<BigComplex>> {
    set.classes
        .par_iter()
        .map(|c| hauptmodul_at(set.level, &c.form, budget))
        .collect()
}

/// sum over Q of P_nu(j^(N)(alpha_Q)) / w_Q, computed numerically.
pub fn direct_trace_oracle(level: u64, disc: i64, nu: u64, budget: Budget) -> Result<BigComplex> {
    let set = heegner_representatives(level, disc)?;
    let p = p_polynomials(level, nu as usize)?.pop().unwrap();
    let vals = class_values(&set, budget)?;
    let mut acc = BigComplex::zero(budget.bits);
    for (c, v) in set.classes.iter().zip(&vals) {
        let t = eval_poly(&p.coeffs, v);
        acc = &acc + &t.scale(&Float::with_val(budget.bits, 1.0 / c.weight as f64));
    }
    let scale = acc.re.clone().abs().to_f64().max(1.0);
    if acc.im.clone().abs().to_f64() > 1e-8 * scale {
        return Err(Error::Numeric(format!(
            "trace oracle for N = {level}, D = {disc}, nu = {nu} has imaginary part {}",
            acc.im.to_f64()
        )));
    }
    Ok(acc)
}

/// Outcome of checking a class polynomial against numerical Hauptmodul values.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub level: u64,
    pub disc: i64,
    /// (form, j^(N)(alpha_Q), |H(j^(N)(alpha_Q))|)
    pub points: Vec<(BinaryQF, BigComplex, f64)>,
    pub max_residual: f64,
    /// Numeric roots of H matched to the point values, or None when a
    /// match failed or two values claimed the same root.
    pub pairing: Option<Vec<usize>>,
    pub bits_used: u32,
    pub passed: bool,
}

/// Roots of a monic polynomial by the Weierstrass iteration.
pub fn polynomial_roots(coeffs: &[Integer], bits: u32) -> Vec<BigComplex> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // Cauchy bound for the starting circle
    let lead = Float::with_val(bits, &coeffs[n]);
    let mut radius = Float::with_val(bits, 1);
    for c in &coeffs[..n] {
        let r = Float::with_val(bits, c).abs() / &lead + 1u32;
        if r > radius {
            radius = r;
        }
    }
    let seed = BigComplex::from_f64(bits, 0.4, 0.9);
    let mut roots: Vec<BigComplex> = (0..n).map(|k| seed.powi(k as i64).scale(&radius)).collect();
    let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 16));
    for _ in 0..2000 {
        let mut moved = Float::new(bits);
        for i in 0..n {
            let num = eval_poly(coeffs, &roots[i]);
            let mut den = BigComplex::from_f64(bits, 1.0, 0.0);
            for (j, r) in roots.iter().enumerate() {
                if j != i {
                    den = &den * &(&roots[i] - r);
                }
            }
            let step = num.div(&den);
            let rel = step.abs() / (roots[i].abs() + 1u32);
            if rel > moved {
                moved = rel;
            }
            roots[i] = &roots[i] - &step;
        }
        if moved < tol {
            break;
        }
    }
    roots
}

fn pair(values: &[BigComplex], roots: &[BigComplex]) -> Option<Vec<usize>> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for v in values {
        let scale = v.abs().to_f64().max(1.0);
        let (best, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (v - r).abs().to_f64()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if dist > PAIRING_TOL * scale || used[best] {
            return None;
        }
        used[best] = true;
        out.push(best);
    }
    Some(out)
}

/// Evaluates H at every j^(N)(alpha_Q), doubling the working precision until
/// the residuals settle below tolerance or the precision cap is reached.
pub fn verify_class_polynomial(h: &ClassPolynomial, budget: Budget) -> Result<VerifyReport> {
    let set = heegner_representatives(h.level, h.disc)?;
    let mut bits = budget.bits;
    loop {
        let vals = class_values(&set, Budget { bits, ..budget })?;
        let mut points = Vec::new();
        let mut max_residual = 0.0f64;
        for (c, v) in set.classes.iter().zip(vals) {
            let r = eval_poly(&h.coeffs, &v).abs().to_f64();
            max_residual = max_residual.max(r);
            points.push((c.form, v, r));
        }
        // keep going well past the tolerance so a pass is not a rounding accident
        if max_residual >= RESIDUAL_TOL * 1e-6 && bits < 1 << 14 {
            bits *= 2;
            continue;
        }
        let roots = polynomial_roots(&h.coeffs, bits);
        let values: Vec<BigComplex> = points.iter().map(|p| p.1.clone()).collect();
        let pairing = if roots.len() == values.len() { pair(&values, &roots) } else { None };
        let passed = max_residual < RESIDUAL_TOL && pairing.is_some();
        return Ok(VerifyReport { level: h.level, disc: h.disc, points, max_residual, pairing, bits_used: bits, passed });
    }
}

/// The first D = 0, 3 mod 4 at which F_N(0) has a nonzero coefficient.
pub fn first_sensitive_disc(level: u64) -> Result<i64> {
    let f0 = seed_form(level, 0, 200)?;
    (3..200)
        .filter(|d| matches!(d % 4, 0 | 3))
        .find(|&d| f0.coeff(d).is_ok_and(|c| c != 0))
        .ok_or_else(|| Error::Numeric(format!("no sensitive discriminant below 200 for N = {level}")))
}

/// Shift of the constant term of F_N(-m) (m a square) that reconciles the
/// trace formula with the numerical trace at fiducial D.
///
/// Replacing F_N(-m) by F_N(-m) + delta F_N(0) moves the constant term by
/// delta F_N(0)[0] and Tr_sqrt(m) by -sqrt(m) delta F_N(0)[D]; the returned
/// value is delta F_N(0)[0], recognized as a rational with denominator
/// dividing 288 varpi(N).
pub fn calibrate_constant_term(families: &Families, level: u64, m: u64, disc: i64, budget: Budget) -> Result<Rational> {
    let nu = crate::arith::isqrt(m);
    if nu * nu != m || m == 0 {
        return Err(Error::Invalid(format!("calibration needs a square m, got {m}")));
    }
    if level == 1 {
        // no holomorphic plus form at level 1: the family is unique
        return Ok(Rational::new());
    }
    let f0 = seed_form(level, 0, disc + 1)?;
    let sens = f0.coeff(disc)?;
    if sens == 0 {
        return Err(Error::InsensitiveFiducial { level, disc });
    }
    let exact = trace_with(families, level, disc, nu)?;
    let numeric = direct_trace_oracle(level, disc, nu, budget)?;
    let bits = numeric.bits();
    let mismatch = numeric.re - Float::with_val(bits, &exact);
    // delta = -mismatch / (nu F0[D])
    let delta = -mismatch / Float::with_val(bits, Rational::from(&sens * nu));
    let adjust = delta * Float::with_val(bits, f0.coeff(0)?);
    let den = 288 * gamma0_index(level);
    let scaled = Float::with_val(bits, &adjust * den);
    let k = scaled.clone().round();
    if (scaled - &k).abs().to_f64() > 1e-6 {
        return Err(Error::Numeric(format!(
            "calibration for N = {level}, m = {m} at D = {disc} is not a small rational: {}",
            adjust.to_f64()
        )));
    }
    Ok(Rational::from((k.to_integer().unwrap(), Integer::from(den))))
}
