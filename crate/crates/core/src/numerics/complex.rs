//! Complex scalar built on [`HPReal`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::HPReal;

/// Complex number `re + i·im`; both parts share one working precision.
#[derive(Clone, PartialEq)]
pub struct HPComplex {
    pub re: HPReal,
    pub im: HPReal,
}

impl HPComplex {
    pub fn new(re: HPReal, im: HPReal) -> Self {
        let d = re.digits().max(im.digits());
        HPComplex { re: re.with_digits(d), im: im.with_digits(d) }
    }

    pub fn from_real(re: HPReal) -> Self {
        let d = re.digits();
        HPComplex { re, im: HPReal::zero(d) }
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        HPComplex { re: HPReal::from_f64(re, digits), im: HPReal::from_f64(im, digits) }
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_real(HPReal::zero(digits))
    }

    pub fn one(digits: u32) -> Self {
        Self::from_real(HPReal::one(digits))
    }

    pub fn i(digits: u32) -> Self {
        HPComplex { re: HPReal::zero(digits), im: HPReal::one(digits) }
    }

    pub fn digits(&self) -> u32 {
        self.re.digits().max(self.im.digits())
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        HPComplex { re: self.re.with_digits(digits), im: self.im.with_digits(digits) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Real part as an integer if the value is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.is_real() || !self.re.is_integer() {
            return None;
        }
        let f = self.re.to_f64();
        if f.abs() < 9.0e15 {
            Some(f as i64)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        HPComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> HPReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> HPReal {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> HPReal {
        self.im.atan2(&self.re)
    }

    pub fn scale(&self, k: &HPReal) -> Self {
        HPComplex { re: &self.re * k, im: &self.im * k }
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        if self.im.is_zero() {
            return HPComplex::from_real(r).with_digits(self.digits());
        }
        HPComplex { re: &r * &self.im.cos(), im: &r * &self.im.sin() }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        if self.im.is_zero() && self.re.is_positive() {
            return HPComplex::from_real(self.re.ln()).with_digits(self.digits());
        }
        HPComplex { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal power `self^w`.
    pub fn pow(&self, w: &HPComplex) -> Self {
        let d = self.digits().max(w.digits());
        if w.is_zero() {
            return HPComplex::one(d);
        }
        if self.is_zero() {
            return HPComplex::zero(d);
        }
        if self.is_real() && w.is_real() && self.re.is_positive() {
            return HPComplex::from_real(self.re.powf(&w.re)).with_digits(d);
        }
        (&self.ln() * w).exp()
    }

    /// Principal power `self^x` for real `x`.
    pub fn powf(&self, x: &HPReal) -> Self {
        self.pow(&HPComplex::from_real(x.clone()))
    }

    pub fn powi(&self, n: i64) -> Self {
        if self.is_real() {
            return HPComplex::from_real(self.re.powi(n)).with_digits(self.digits());
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = HPComplex::one(self.digits());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &HPComplex::one(self.digits()) / self
    }

    pub fn sin(&self) -> Self {
        if self.im.is_zero() {
            return HPComplex::from_real(self.re.sin()).with_digits(self.digits());
        }
        HPComplex { re: &self.re.sin() * &self.im.cosh(), im: &self.re.cos() * &self.im.sinh() }
    }

    pub fn cos(&self) -> Self {
        if self.im.is_zero() {
            return HPComplex::from_real(self.re.cos()).with_digits(self.digits());
        }
        HPComplex { re: &self.re.cos() * &self.im.cosh(), im: -(&self.re.sin() * &self.im.sinh()) }
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let half = HPReal::from_f64(0.5, self.digits());
        self.powf(&half)
    }

    pub fn to_decimal(&self, sig: u32) -> String {
        if self.im.is_zero() {
            return self.re.to_decimal(sig);
        }
        let im = self.im.to_decimal(sig);
        if let Some(stripped) = im.strip_prefix('-') {
            format!("{}-{}i", self.re.to_decimal(sig), stripped)
        } else {
            format!("{}+{}i", self.re.to_decimal(sig), im)
        }
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPComplex({})", self.to_decimal(self.digits()))
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(crate::numerics::DISPLAY_DIGITS);
        f.write_str(&self.to_decimal(sig))
    }
}

impl From<HPReal> for HPComplex {
    fn from(r: HPReal) -> Self {
        HPComplex::from_real(r)
    }
}

impl<'a> Add<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn add(self, rhs: &'a HPComplex) -> HPComplex {
        HPComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn sub(self, rhs: &'a HPComplex) -> HPComplex {
        HPComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn mul(self, rhs: &'a HPComplex) -> HPComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            let re = &self.re * &rhs.re;
            let d = re.digits();
            return HPComplex { re, im: HPReal::zero(d) };
        }
        HPComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;
    fn div(self, rhs: &'a HPComplex) -> HPComplex {
        if rhs.im.is_zero() {
            return HPComplex { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        let den = rhs.norm_sqr();
        HPComplex {
            re: &(&(&self.re * &rhs.re) + &(&self.im * &rhs.im)) / &den,
            im: &(&(&self.im * &rhs.re) - &(&self.re * &rhs.im)) / &den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &'a HPComplex) -> HPComplex {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex { re: -&self.re, im: -&self.im }
    }
}
