//! Complex numbers over MPFR floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::{Float, Integer};

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero(bits: u32) -> Self {
        BigComplex { re: Float::new(bits), im: Float::new(bits) }
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(bits, re), im: Float::with_val(bits, im) }
    }

    pub fn from_integer(bits: u32, n: &Integer) -> Self {
        BigComplex { re: Float::with_val(bits, n), im: Float::new(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.re.prec()
    }

    /// e^{2 pi i x} e^{-2 pi y} for tau = x + iy.
    pub fn exp_2pi_i(re: &Float, im: &Float) -> Self {
        let bits = re.prec().max(im.prec());
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let r = Float::with_val(bits, -(im * two_pi.clone())).exp();
        let (s, c) = Float::with_val(bits, re * two_pi).sin_cos(Float::new(bits));
        BigComplex { re: Float::with_val(bits, &r * &c), im: r * s }
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.bits(), self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: &Float) -> Self {
        BigComplex {
            re: Float::with_val(self.bits(), &self.re * c),
            im: Float::with_val(self.bits(), &self.im * c),
        }
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex {
            re: Float::with_val(self.bits(), &self.re / &n),
            im: Float::with_val(self.bits(), -(&self.im / n)),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self * &o.inv()
    }

    pub fn powi(&self, mut e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        e = e.abs();
        let mut acc = BigComplex::from_f64(self.bits(), 1.0, 0.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let b = self.bits();
        BigComplex { re: Float::with_val(b, &self.re + &o.re), im: Float::with_val(b, &self.im + &o.im) }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let b = self.bits();
        BigComplex { re: Float::with_val(b, &self.re - &o.re), im: Float::with_val(b, &self.im - &o.im) }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let b = self.bits();
        let rr = Float::with_val(b, &self.re * &o.re);
        let ii = Float::with_val(b, &self.im * &o.im);
        let ri = Float::with_val(b, &self.re * &o.im);
        let ir = Float::with_val(b, &self.im * &o.re);
        BigComplex { re: rr - ii, im: ri + ir }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: Float::with_val(self.bits(), -&self.re), im: Float::with_val(self.bits(), -&self.im) }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im < 0.0 {
            write!(f, "{re:.10} - {:.10}i", -im)
        } else {
            write!(f, "{re:.10} + {im:.10}i")
        }
    }
}
