//! Assembly of class polynomials from traces.

use std::fmt;

use rug::{Integer, Rational};

use super::families::Families;
use super::poly::{from_elementary, newton_girard, p_polynomials, power_sums};
use super::trace::{traces_with, TraceVector};
use crate::arith::is_fundamental;
use crate::error::{Error, Result};
use crate::formlib::CLASS_POLY_LEVELS;
use crate::halfint::NormalizationRule;
use crate::quadforms::heegner_representatives;

/// The minimal polynomial of the j^(N)(alpha_Q), Q in Q_D^N / Gamma_0(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPolynomial {
    pub level: u64,
    pub disc: i64,
    /// Constant term first; the last entry is 1.
    pub coeffs: Vec<Integer>,
    pub traces: TraceVector,
    pub power_sums: Vec<Rational>,
    /// Common stabilizer order of the classes.
    pub weight: u32,
    pub family_precision: i64,
}

impl ClassPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(&self.coeffs))
    }
}

/// Renders `x^4+30x^3-1470x+2401` style text, constant term first input.
pub fn render_poly(coeffs: &[Integer]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if *c == 0 {
            continue;
        }
        let neg = *c < 0;
        let abs = Integer::from(c.abs_ref());
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if abs != 1 || k == 0 {
            out.push_str(&abs.to_string());
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// H_D^(N)(x) for fundamental -D, computed exactly from traces.
pub fn class_polynomial_with(families: &Families, level: u64, disc: i64) -> Result<ClassPolynomial> {
    if !CLASS_POLY_LEVELS.contains(&level) {
        return Err(Error::UnsupportedLevel(level));
    }
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let set = heegner_representatives(level, disc)?;
    let h = set.len();
    let weight = set.classes.first().map_or(1, |c| c.weight);
    if set.classes.iter().any(|c| c.weight != weight) {
        return Err(Error::Invalid(format!("mixed stabilizer orders for N = {level}, D = {disc}")));
    }
    let traces = traces_with(families, level, disc, h)?;
    let polys = p_polynomials(level, h)?;
    let s = power_sums(&traces.values, &polys, h, weight)?;
    let coeffs = from_elementary(&newton_girard(&s))
        .into_iter()
        .map(|c| {
            if *c.denom() == 1 {
                Ok(c.into_numer_denom().0)
            } else {
                Err(Error::Normalization(format!(
                    "normalization inconsistency: N = {level}, D = {disc} gives non-integral coefficient {c}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassPolynomial {
        level,
        disc,
        coeffs,
        traces,
        power_sums: s,
        weight,
        family_precision: disc + 1,
    })
}

/// H_D^(N)(x) with freshly generated families under the default rule.
pub fn class_polynomial(level: u64, disc: i64) -> Result<ClassPolynomial> {
    class_polynomial_with(&Families::new(NormalizationRule::square_delta()), level, disc)
}
