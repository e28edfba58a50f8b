//! Multi-precision real scalar.
//!
//! `HPReal` wraps an `astro_float::BigFloat` together with the number of
//! decimal digits it is meant to carry. Binary operations run at the larger
//! of the two operand precisions, so precision is never silently lowered.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;
const GUARD_BITS: usize = 16;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary precision used to carry `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    let raw = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
    raw.div_ceil(WORD_BITS) * WORD_BITS
}

/// Real scalar carrying a working precision in decimal digits.
#[derive(Clone)]
pub struct HPReal {
    v: BigFloat,
    digits: u32,
}

impl HPReal {
    fn wrap(v: BigFloat, digits: u32) -> Self {
        HPReal { v, digits }
    }

    fn p(&self) -> usize {
        bits_for_digits(self.digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Same value re-rounded to a new working precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let mut v = self.v.clone();
        // set_precision only fails for invalid precisions, which bits_for_digits never yields
        let _ = v.set_precision(bits_for_digits(digits), RM);
        HPReal { v, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_i64(0, digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(i: i64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_i64(i, bits_for_digits(digits)), digits)
    }

    pub fn from_u64(i: u64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_u64(i, bits_for_digits(digits)), digits)
    }

    /// Exact conversion of the binary value of `x`.
    pub fn from_f64(x: f64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_f64(x, bits_for_digits(digits)), digits)
    }

    pub fn from_bigint(i: &BigInt, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        if i.is_zero() {
            return Self::zero(digits);
        }
        let (sign, words) = i.to_u64_digits();
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
        let mut v = BigFloat::from_words(&words, s, (words.len() * WORD_BITS) as i32);
        let _ = v.set_precision(p.max(words.len() * WORD_BITS), RM);
        let mut out = Self::wrap(v, digits);
        if out.v.precision() != Some(p) {
            out = out.with_digits(digits);
        }
        out
    }

    pub fn from_ratio(r: &BigRational, digits: u32) -> Self {
        let n = Self::from_bigint(r.numer(), digits);
        if r.denom().is_one() {
            return n;
        }
        let d = Self::from_bigint(r.denom(), digits);
        &n / &d
    }

    /// Parses a decimal literal (`-1.25`, `3e-8`, `.5`) or a ratio `p/q`.
    pub fn parse(s: &str, digits: u32) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Self::from_ratio(&BigRational::new(n, d), digits));
        }
        if !is_decimal_literal(s) {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        let p = bits_for_digits(digits);
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        if v.is_nan() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        Ok(Self::wrap(v, digits))
    }

    pub fn pi(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::wrap(with_consts(|cc| cc.pi(p, RM)), digits)
    }

    pub fn e(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::wrap(with_consts(|cc| cc.e(p, RM)), digits)
    }

    pub fn ln2(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::wrap(with_consts(|cc| cc.ln_2(p, RM)), digits)
    }

    /// `10^k` for any integer `k`.
    pub fn pow10(k: i64, digits: u32) -> Self {
        Self::from_i64(10, digits).powi(k)
    }

    /// Unit roundoff bound `10^(1-p)` at `digits`.
    pub fn ulp_bound(digits: u32) -> Self {
        Self::pow10(1 - digits as i64, digits)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    /// Whether the value is an integer (finite values only).
    pub fn is_integer(&self) -> bool {
        self.is_finite() && self.v.is_int()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.digits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p(), RM), self.digits)
    }

    pub fn exp(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.exp(p, RM, cc)), self.digits)
    }

    /// `e^x - 1` without cancellation for small `x`.
    pub fn expm1(&self) -> Self {
        if self.abs() > HPReal::from_f64(0.25, self.digits) {
            return &self.exp() - &HPReal::one(self.digits);
        }
        let tol = HPReal::ulp_bound(self.digits + 4);
        let mut term = self.clone();
        let mut acc = self.clone();
        let mut k = 1i64;
        while term.abs() > &tol * &acc.abs() {
            k += 1;
            term = &(&term * self) / &HPReal::from_i64(k, self.digits);
            acc = &acc + &term;
        }
        acc
    }

    pub fn ln(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.ln(p, RM, cc)), self.digits)
    }

    pub fn sin(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.sin(p, RM, cc)), self.digits)
    }

    pub fn cos(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.cos(p, RM, cc)), self.digits)
    }

    pub fn sinh(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.sinh(p, RM, cc)), self.digits)
    }

    pub fn cosh(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.cosh(p, RM, cc)), self.digits)
    }

    pub fn atan(&self) -> Self {
        let p = self.p();
        Self::wrap(with_consts(|cc| self.v.atan(p, RM, cc)), self.digits)
    }

    /// Four-quadrant arctangent of `self / x`.
    pub fn atan2(&self, x: &HPReal) -> Self {
        let d = self.digits.max(x.digits);
        if x.is_zero() {
            if self.is_zero() {
                return Self::zero(d);
            }
            let half_pi = &HPReal::pi(d) / &HPReal::from_i64(2, d);
            return if self.is_negative() { -half_pi } else { half_pi };
        }
        let base = (self / x).atan();
        if x.is_positive() {
            base
        } else if self.is_negative() {
            &base - &HPReal::pi(d)
        } else {
            &base + &HPReal::pi(d)
        }
    }

    /// `self^y` for `self > 0`.
    pub fn powf(&self, y: &HPReal) -> Self {
        let d = self.digits.max(y.digits);
        if y.is_zero() {
            return Self::one(d);
        }
        if self.is_zero() {
            return Self::zero(d);
        }
        (&self.ln() * y).exp()
    }

    /// `self^n` for any integer `n`.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.p();
        let pos = Self::wrap(self.v.powi(n.unsigned_abs() as usize, p, RM), self.digits);
        if n < 0 {
            &Self::one(self.digits) / &pos
        } else {
            pos
        }
    }

    pub fn recip(&self) -> Self {
        &Self::one(self.digits) / self
    }

    pub fn max(&self, other: &HPReal) -> HPReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &HPReal) -> HPReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest integer (ties to even).
    pub fn round(&self) -> HPReal {
        Self::wrap(self.v.round(0, RM), self.digits)
    }

    /// Floor of `log2 |x|` plus one, or `None` for zero.
    pub fn binary_exponent(&self) -> Option<i64> {
        if self.is_zero() || !self.is_finite() {
            return None;
        }
        self.v.exponent().map(|e| e as i64)
    }

    /// Nearest f64 (truncating the mantissa).
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_inf_pos() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        match self.v.as_raw_parts() {
            Some((words, _n, sign, e, _)) if !self.v.is_zero() => {
                let top = *words.last().unwrap_or(&0) as f64;
                let second = if words.len() >= 2 { words[words.len() - 2] as f64 } else { 0.0 };
                let mant = top + second / 18_446_744_073_709_551_616.0;
                let mut val = mant;
                // scale by 2^(e - 64) in safe steps
                let mut k = e as i64 - WORD_BITS as i64;
                while k > 1000 {
                    val *= 2f64.powi(1000);
                    k -= 1000;
                }
                while k < -1000 {
                    val *= 2f64.powi(-1000);
                    k += 1000;
                }
                val *= 2f64.powi(k as i32);
                if sign == Sign::Neg {
                    -val
                } else {
                    val
                }
            }
            _ => 0.0,
        }
    }

    /// Exact rational value of the binary number.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_finite() {
            return None;
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let (words, _n, sign, e, _) = self.v.as_raw_parts()?;
        let mant = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<u32>>(),
        );
        let mut num = BigInt::from(mant);
        if sign == Sign::Neg {
            num = -num;
        }
        let shift = e as i64 - (words.len() * WORD_BITS) as i64;
        let r = if shift >= 0 {
            BigRational::from_integer(num << (shift as usize))
        } else {
            BigRational::new(num, BigInt::one() << ((-shift) as usize))
        };
        Some(r)
    }

    /// Nearest integer as a `BigInt`.
    pub fn to_bigint_rounded(&self) -> Option<BigInt> {
        let r = self.round().to_rational()?;
        Some(r.to_integer())
    }

    /// Decimal rendering with `sig` significant digits, trailing zeros removed.
    ///
    /// Plain positional notation is used for decimal exponents in `[-7, 24]`,
    /// scientific (`1.25e-30`) otherwise.
    pub fn to_decimal(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.v.is_nan() {
            return "NaN".to_string();
        }
        if self.v.is_inf() {
            return if self.v.is_inf_pos() { "inf".into() } else { "-inf".into() };
        }
        if self.is_zero() {
            return "0".to_string();
        }
        let work = self.digits.max(sig) + 20;
        let x = self.with_digits(work).abs();
        let be = x.binary_exponent().unwrap_or(0);
        let mut dexp = ((be - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let mut digits_str = String::new();
        for _ in 0..4 {
            let scaled = &x * &HPReal::pow10(sig as i64 - 1 - dexp, work);
            let int = scaled.to_bigint_rounded().unwrap_or_default();
            let s = int.abs().to_string();
            match s.len().cmp(&(sig as usize)) {
                Ordering::Equal => {
                    digits_str = s;
                    break;
                }
                Ordering::Greater => dexp += 1,
                Ordering::Less => dexp -= 1,
            }
            digits_str = s;
        }
        if digits_str.len() > sig as usize {
            // rounding carried into a new digit (e.g. 9.99 -> 10.0)
            digits_str.truncate(sig as usize);
            dexp += 1;
        }
        let trimmed = digits_str.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        let sign = if self.is_negative() { "-" } else { "" };
        if (-7..=24).contains(&dexp) {
            let mut out = String::from(sign);
            if dexp < 0 {
                out.push_str("0.");
                for _ in 0..(-dexp - 1) {
                    out.push('0');
                }
                out.push_str(trimmed);
            } else {
                let int_len = (dexp + 1) as usize;
                if trimmed.len() <= int_len {
                    out.push_str(trimmed);
                    for _ in trimmed.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&trimmed[..int_len]);
                    out.push('.');
                    out.push_str(&trimmed[int_len..]);
                }
            }
            out
        } else {
            let mut out = String::from(sign);
            out.push_str(&trimmed[..1]);
            if trimmed.len() > 1 {
                out.push('.');
                out.push_str(&trimmed[1..]);
            }
            out.push_str(&format!("e{dexp}"));
            out
        }
    }
}

fn is_decimal_literal(s: &str) -> bool {
    let s = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let mut seen_digit = false;
    let mut seen_dot = false;
    for c in mant.chars() {
        match c {
            '0'..='9' => seen_digit = true,
            '.' if !seen_dot => seen_dot = true,
            _ => return false,
        }
    }
    if !seen_digit {
        return false;
    }
    match exp {
        None => true,
        Some(e) => {
            let e = e.strip_prefix(['+', '-']).unwrap_or(e);
            !e.is_empty() && e.chars().all(|c| c.is_ascii_digit())
        }
    }
}

impl fmt::Debug for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPReal({}, p={})", self.to_decimal(self.digits), self.digits)
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(crate::numerics::DISPLAY_DIGITS);
        f.write_str(&self.to_decimal(sig))
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! impl_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a HPReal> for &'a HPReal {
            type Output = HPReal;
            fn $m(self, rhs: &'a HPReal) -> HPReal {
                let d = self.digits.max(rhs.digits);
                HPReal::wrap(self.v.$m(&rhs.v, bits_for_digits(d), RM), d)
            }
        }
        impl $tr<HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: &'a HPReal) -> HPReal {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<HPReal> for &'a HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal {
                self.$m(&rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal::wrap(BigFloat::neg(&self.v), self.digits)
    }
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal::wrap(BigFloat::neg(&self.v), self.digits)
    }
}

/// Exact rational to a signed decimal string with `sig` significant digits.
pub fn rational_to_decimal(r: &BigRational, sig: u32) -> String {
    HPReal::from_ratio(r, sig + 20).to_decimal(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let d = 64;
        assert_eq!(HPReal::from_i64(1, d).to_decimal(30), "1");
        assert_eq!(HPReal::from_f64(0.5, d).to_decimal(30), "0.5");
        assert_eq!(HPReal::from_i64(-12, d).to_decimal(30), "-12");
        assert_eq!(HPReal::zero(d).to_decimal(30), "0");
        let third = &HPReal::one(d) / &HPReal::from_i64(3, d);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        let two_thirds = &HPReal::from_i64(2, d) / &HPReal::from_i64(3, d);
        assert_eq!(two_thirds.to_decimal(5), "0.66667");
        assert_eq!(HPReal::parse("9.9999996", d).unwrap().to_decimal(6), "10");
        assert_eq!(HPReal::parse("1e-30", d).unwrap().to_decimal(20), "1e-30");
        assert_eq!(HPReal::parse("-2.5e40", d).unwrap().to_decimal(20), "-2.5e40");
    }

    #[test]
    fn constants() {
        let d = 64;
        assert_eq!(
            HPReal::pi(d).to_decimal(40),
            "3.141592653589793238462643383279502884197"
        );
        assert_eq!(HPReal::e(d).to_decimal(30), "2.71828182845904523536028747135");
        assert_eq!(HPReal::ln2(d).to_decimal(20), "0.69314718055994530942");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(HPReal::parse("abc", 64).is_err());
        assert!(HPReal::parse("1.2.3", 64).is_err());
        assert!(HPReal::parse("1e", 64).is_err());
        assert!(HPReal::parse("1/0", 64).is_err());
        assert_eq!(HPReal::parse("1/4", 64).unwrap().to_f64(), 0.25);
        assert_eq!(HPReal::parse(".5", 64).unwrap().to_f64(), 0.5);
    }

    #[test]
    fn rational_round_trip_is_exact() {
        let x = HPReal::from_f64(-5.5e-20, 64);
        let r = x.to_rational().unwrap();
        assert_eq!(HPReal::from_ratio(&r, 64), x);
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let y = HPReal::from_bigint(&big, 64);
        assert_eq!(y.to_rational().unwrap(), BigRational::from_integer(big));
    }

    #[test]
    fn expm1_small_argument() {
        let x = HPReal::parse("1e-40", 64).unwrap();
        let y = x.expm1();
        let rel = ((&y - &x) / &x).abs();
        // e^x - 1 = x + x^2/2 + ..., relative correction 5e-41
        assert!(rel.to_f64() < 1e-40 && rel.to_f64() > 4e-41);
    }

    #[test]
    fn atan2_quadrants() {
        let d = 64;
        let pi = HPReal::pi(d);
        let q = |y: f64, x: f64| HPReal::from_f64(y, d).atan2(&HPReal::from_f64(x, d));
        assert!((q(1.0, -1.0) - &pi * &HPReal::from_f64(0.75, d)).abs() < HPReal::ulp_bound(60));
        assert!((q(-1.0, -1.0) + &pi * &HPReal::from_f64(0.75, d)).abs() < HPReal::ulp_bound(60));
        assert!((q(1.0, 0.0) - &pi / &HPReal::from_i64(2, d)).abs() < HPReal::ulp_bound(60));
        assert!(q(0.0, 1.0).is_zero());
    }

    #[test]
    fn precision_propagates_upward() {
        let a = HPReal::one(50);
        let b = HPReal::one(80);
        assert_eq!((&a + &b).digits(), 80);
        assert_eq!((&b * &a).digits(), 80);
    }
}
