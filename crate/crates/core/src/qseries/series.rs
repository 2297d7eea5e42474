use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use rug::{Assign, Integer, Rational};

use crate::error::{Error, Result};

/// Above this many output coefficients the Cauchy product is split across threads.
const PAR_THRESHOLD: usize = 96;

/// Truncated Laurent series in q with exact rational coefficients.
///
/// Coefficients are kept over one common positive denominator, so the hot
/// loops (products, linear combinations) run on integers. The representation
/// is canonical: `start` is the first nonzero exponent (or the precision when
/// every known coefficient vanishes) and `gcd(den, nums) = 1`. Derived
/// equality is therefore equality of series *and* of precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    start: i64,
    nums: Vec<Integer>,
    den: Integer,
}

impl LaurentSeries {
    /// Series with coefficients `coeffs[i]` at q^(start+i); precision is
    /// `start + coeffs.len()`.
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        let mut den = Integer::from(1);
        for c in &coeffs {
            if *c.denom() != 1 {
                den.lcm_mut(c.denom());
            }
        }
        let nums = coeffs
            .into_iter()
            .map(|c| {
                let (n, d) = c.into_numer_denom();
                n * Integer::from(&den / &d)
            })
            .collect();
        Self::from_parts(start, nums, den)
    }

    pub fn from_integers(start: i64, coeffs: Vec<Integer>) -> Self {
        Self::from_parts(start, coeffs, Integer::from(1))
    }

    pub fn from_i64(start: i64, coeffs: &[i64]) -> Self {
        Self::from_integers(start, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Builds the series sum nums[i]/den q^(start+i) and canonicalizes it.
    pub fn from_parts(start: i64, nums: Vec<Integer>, den: Integer) -> Self {
        assert!(den != 0, "zero denominator");
        let mut s = LaurentSeries { start, nums, den };
        s.canonicalize();
        s
    }

    /// The zero series known to precision `precision`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries { start: precision, nums: Vec::new(), den: Integer::from(1) }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(Rational::from(1), 0, precision)
    }

    /// c q^e + O(q^precision).
    pub fn monomial(c: Rational, e: i64, precision: i64) -> Self {
        if e >= precision {
            return Self::zero(precision);
        }
        let mut coeffs = vec![Rational::new(); (precision - e) as usize];
        coeffs[0] = c;
        Self::new(e, coeffs)
    }

    fn canonicalize(&mut self) {
        let lead = self.nums.iter().position(|c| *c != 0).unwrap_or(self.nums.len());
        if lead > 0 {
            self.nums.drain(..lead);
            self.start += lead as i64;
        }
        if self.den < 0 {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.nums {
                *c = -std::mem::take(c);
            }
        }
        if self.den != 1 {
            let mut g = self.den.clone();
            for c in &self.nums {
                if g == 1 {
                    break;
                }
                g.gcd_mut(c);
            }
            if g != 1 {
                self.den /= &g;
                for c in &mut self.nums {
                    c.div_exact_mut(&g);
                }
            }
        }
        if self.nums.is_empty() {
            self.den.assign(1);
        }
    }

    /// Lowest exponent with a stored (nonzero) coefficient; equals the
    /// precision when every known coefficient is zero.
    pub fn valuation(&self) -> i64 {
        self.start
    }

    /// Coefficients are known for exponents strictly below this value.
    pub fn precision(&self) -> i64 {
        self.start + self.nums.len() as i64
    }

    /// The common denominator of all coefficients.
    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.nums.is_empty()
    }

    /// Coefficient of q^n. Reading at or above the precision is an error.
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        Ok(Rational::from((self.coeff_num(n)?.clone(), self.den.clone())))
    }

    /// Numerator of the coefficient of q^n over the common denominator.
    pub fn coeff_num(&self, n: i64) -> Result<&Integer> {
        static ZERO: Integer = Integer::ZERO;
        if n >= self.precision() {
            return Err(Error::Precision { index: n, precision: self.precision() });
        }
        if n < self.start {
            return Ok(&ZERO);
        }
        Ok(&self.nums[(n - self.start) as usize])
    }

    /// Coefficient that is known to be an integer.
    pub fn coeff_int(&self, n: i64) -> Result<Integer> {
        let c = self.coeff(n)?;
        if *c.denom() != 1 {
            return Err(Error::Invalid(format!("coefficient of q^{n} is {c}, not an integer")));
        }
        Ok(c.into_numer_denom().0)
    }

    /// Exact coefficients for exponents `from..precision`.
    pub fn coeffs_from(&self, from: i64) -> Vec<Rational> {
        (from..self.precision()).map(|n| self.coeff(n).unwrap()).collect()
    }

    /// Nonzero coefficients as (exponent, value) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Rational)> + '_ {
        self.nums.iter().enumerate().filter(|(_, c)| **c != 0).map(move |(i, c)| {
            (self.start + i as i64, Rational::from((c.clone(), self.den.clone())))
        })
    }

    /// Forget coefficients at and above `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision() {
            return self.clone();
        }
        if precision <= self.start {
            return Self::zero(precision);
        }
        let keep = (precision - self.start) as usize;
        Self::from_parts(self.start, self.nums[..keep].to_vec(), self.den.clone())
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { start: self.start + k, nums: self.nums.clone(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero(self.precision());
        }
        let nums = self.nums.iter().map(|x| Integer::from(x * c.numer())).collect();
        Self::from_parts(self.start, nums, Integer::from(&self.den * c.denom()))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from(c))
    }

    /// self + c*other with the sum's precision.
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        if *c == 0 || other.is_zero() {
            return self.truncate(prec);
        }
        // a/da + (cn/cd)(b/db) = (a*(L/da) + b*cn*(L/(cd*db))) / L
        let od = Integer::from(c.denom() * &other.den);
        let l = self.den.clone().lcm(&od);
        let fa = Integer::from(&l / &self.den);
        let fb = Integer::from(&l / &od) * c.numer();
        let start = self.start.min(other.start).min(prec);
        let len = (prec - start) as usize;
        let mut nums = vec![Integer::new(); len];
        for (k, slot) in nums.iter_mut().enumerate() {
            let n = start + k as i64;
            if n >= self.start && n < self.precision() {
                let a = &self.nums[(n - self.start) as usize];
                if *a != 0 {
                    *slot += a * &fa;
                }
            }
            if n >= other.start && n < other.precision() {
                let b = &other.nums[(n - other.start) as usize];
                if *b != 0 {
                    *slot += b * &fb;
                }
            }
        }
        Self::from_parts(start, nums, l)
    }

    /// sum of c_i f_i, evaluated coefficientwise (in parallel for long series).
    /// The precision is the minimum over the terms.
    pub fn linear_combination(terms: &[(Rational, &LaurentSeries)]) -> Self {
        let terms: Vec<&(Rational, &LaurentSeries)> = terms.iter().filter(|(c, _)| *c != 0).collect();
        let prec = terms.iter().map(|(_, f)| f.precision()).min().unwrap_or(0);
        if terms.is_empty() {
            return Self::zero(prec);
        }
        let mut l = Integer::from(1);
        for (c, f) in &terms {
            l.lcm_mut(&Integer::from(c.denom() * &f.den));
        }
        let factors: Vec<Integer> = terms
            .iter()
            .map(|(c, f)| (&l / Integer::from(c.denom() * &f.den)) * c.numer())
            .collect();
        let start = terms.iter().map(|(_, f)| f.start).min().unwrap().min(prec);
        let len = (prec - start) as usize;
        let coef = |k: usize| -> Integer {
            let n = start + k as i64;
            let mut acc = Integer::new();
            for ((_, f), w) in terms.iter().zip(&factors) {
                if n >= f.start {
                    let x = &f.nums[(n - f.start) as usize];
                    if *x != 0 {
                        acc += x * w;
                    }
                }
            }
            acc
        };
        let nums: Vec<Integer> = if len * terms.len() >= 4 * PAR_THRESHOLD {
            (0..len).into_par_iter().with_min_len(16).map(coef).collect()
        } else {
            (0..len).map(coef).collect()
        };
        Self::from_parts(start, nums, l)
    }

    /// Cauchy product; precision min(P_f + v_g, P_g + v_f).
    pub fn mul_series(&self, other: &Self) -> Self {
        let prec = (self.precision() + other.start).min(other.precision() + self.start);
        let start = self.start + other.start;
        if start >= prec {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        // iterate over the sparser factor
        let (a, b) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let nz: Vec<(usize, &Integer)> =
            a.nums.iter().enumerate().filter(|(i, c)| **c != 0 && *i < len).collect();
        let coef = |k: usize| -> Integer {
            let mut acc = Integer::new();
            for &(i, x) in &nz {
                if i > k {
                    break;
                }
                let j = k - i;
                if j < b.nums.len() {
                    let y = &b.nums[j];
                    if *y != 0 {
                        acc += x * y;
                    }
                }
            }
            acc
        };
        let nums: Vec<Integer> = if len >= PAR_THRESHOLD && nz.len() > 8 {
            (0..len).into_par_iter().with_min_len(8).map(coef).collect()
        } else {
            (0..len).map(coef).collect()
        };
        Self::from_parts(start, nums, Integer::from(&self.den * &other.den))
    }

    fn nonzero_count(&self) -> usize {
        self.nums.iter().filter(|c| **c != 0).count()
    }

    /// Multiplicative inverse; the relative precision is preserved.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let v = self.start;
        let len = self.nums.len();
        let lead = &self.nums[0];
        let nz: Vec<(usize, &Integer)> =
            self.nums.iter().enumerate().skip(1).filter(|(_, c)| **c != 0).collect();
        // 1/(den^-1 * N(q)) = den / N(q)
        let out_nums: Vec<Integer>;
        let out_den: Integer;
        if *lead == 1 || *lead == -1 {
            let sign = lead.clone();
            let mut h: Vec<Integer> = Vec::with_capacity(len);
            h.push(sign.clone());
            for n in 1..len {
                let mut acc = Integer::new();
                for &(k, c) in &nz {
                    if k > n {
                        break;
                    }
                    acc += c * &h[n - k];
                }
                acc *= &sign;
                h.push(-acc);
            }
            out_nums = h.into_iter().map(|x| x * &self.den).collect();
            out_den = Integer::from(1);
        } else {
            let inv_lead = Rational::from((Integer::from(1), lead.clone()));
            let mut g: Vec<Rational> = Vec::with_capacity(len);
            g.push(inv_lead.clone());
            for n in 1..len {
                let mut acc = Rational::new();
                for &(k, c) in &nz {
                    if k > n {
                        break;
                    }
                    acc += Rational::from(c * &g[n - k]);
                }
                g.push(-(acc * &inv_lead));
            }
            let s = LaurentSeries::new(-v, g).scale(&Rational::from(self.den.clone()));
            return Ok(s);
        }
        Ok(Self::from_parts(-v, out_nums, out_den))
    }

    pub fn div_series(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_series(&other.invert()?))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.invert()?.pow(-e);
        }
        let mut result = Self::one(self.precision() - self.start);
        let mut base = self.clone();
        let mut e = e as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul_series(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(result)
    }

    /// The part with negative exponents, as (exponent, coefficient) pairs.
    pub fn principal_part(&self) -> Vec<(i64, Rational)> {
        self.terms().take_while(|(n, _)| *n < 0).collect()
    }

    /// Applies `f` to every known coefficient, keeping exponents and precision.
    pub fn map_coeffs<F: Fn(i64, &Rational) -> Rational>(&self, f: F) -> Self {
        let coeffs = (self.start..self.precision())
            .map(|n| f(n, &self.coeff(n).unwrap()))
            .collect();
        Self::new(self.start, coeffs)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms().take(12) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.precision())
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_scaled(&Rational::from(1), rhs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_scaled(&Rational::from(-1), rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale_int(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: &LaurentSeries) -> LaurentSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(start: i64, c: &[i64]) -> LaurentSeries {
        LaurentSeries::from_i64(start, c)
    }

    #[test]
    fn difference_of_squares() {
        let a = s(-1, &[1, 1, 0, 0, 0]);
        let b = s(-1, &[1, -1, 0, 0, 0]);
        let p = &a * &b;
        assert_eq!(p.valuation(), -2);
        assert_eq!(p.coeff(-2).unwrap(), 1);
        assert_eq!(p.coeff(-1).unwrap(), 0);
        assert_eq!(p.coeff(0).unwrap(), -1);
        assert_eq!(p.precision(), 3);
    }

    #[test]
    fn reads_beyond_precision_fail() {
        let a = s(0, &[1, 2, 3]);
        assert!(a.coeff(2).is_ok());
        assert_eq!(a.coeff(3), Err(Error::Precision { index: 3, precision: 3 }));
        assert_eq!(a.coeff(-5).unwrap(), 0);
    }

    #[test]
    fn geometric_series() {
        let f = s(0, &[1, -1, 0, 0, 0, 0]);
        let g = f.invert().unwrap();
        assert_eq!(g, s(0, &[1, 1, 1, 1, 1, 1]));
        let qinv = s(-1, &[1, 0, 0]);
        assert_eq!(qinv.invert().unwrap(), s(1, &[1, 0, 0]));
    }

    #[test]
    fn invert_with_nonunit_lead() {
        let f = s(0, &[3, 1, 0, 2, 5, 0, 0, 1]);
        let g = f.invert().unwrap();
        assert_eq!(&f * &g, LaurentSeries::one(8));
    }

    #[test]
    fn zero_is_not_invertible() {
        assert_eq!(LaurentSeries::zero(5).invert(), Err(Error::NonInvertible));
    }

    #[test]
    fn canonical_form() {
        let a = LaurentSeries::new(
            -2,
            vec![Rational::new(), Rational::from((2, 4)), Rational::from((1, 3))],
        );
        assert_eq!(a.valuation(), -1);
        assert_eq!(*a.denominator(), 6);
        assert_eq!(a.coeff(-1).unwrap(), Rational::from((1, 2)));
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b.precision(), 1);
    }

    #[test]
    fn precision_rules() {
        let a = s(0, &[1, 1, 1, 1]);
        let b = s(-1, &[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!((&a + &b).precision(), 4);
        // product known to min(4 + (-1), 8 + 0)
        assert_eq!((&a * &b).precision(), 3);
        let z = LaurentSeries::zero(5);
        assert_eq!((&z * &a).precision(), 5);
    }

    #[test]
    fn linear_combinations() {
        let a = s(-1, &[1, 2, 3, 4]);
        let b = s(0, &[5, 6, 7, 8, 9]);
        let half = Rational::from((1, 2));
        let c = LaurentSeries::linear_combination(&[(half.clone(), &a), (Rational::from(-3), &b)]);
        assert_eq!(c, a.scale(&half).add_scaled(&Rational::from(-3), &b));
        assert_eq!(c.precision(), 3);
    }

    #[test]
    fn powers() {
        let f = s(0, &[1, 1, 0, 0, 0]);
        assert_eq!(f.pow(3).unwrap(), s(0, &[1, 3, 3, 1, 0]));
        assert_eq!(f.pow(0).unwrap(), LaurentSeries::one(5));
        assert_eq!(&f.pow(-2).unwrap() * &f.pow(2).unwrap(), LaurentSeries::one(5));
    }
}
