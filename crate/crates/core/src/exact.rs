//! Exact rational values: Bernoulli numbers and polynomials, and the values of
//! ζ, ζ(·, q), η and λ at non-positive integers.
//!
//! Bernoulli numbers use the `B⁺` convention (`B₁ = +1/2`), which makes
//! `ζ(-m) = -B_{m+1}/(m+1)` hold for every `m ≥ 0` including `m = 0`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest Bernoulli index served by the shared table.
pub const DEFAULT_MAX_INDEX: usize = 512;

/// Which Dirichlet lambda is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaConvention {
    /// `Λ(s) = 2(1 - 2^{1-s}) ζ(s)`, i.e. twice η.
    Paper,
    /// `λ(s) = (1 - 2^{-s}) ζ(s) = Σ_{n odd} n^{-s}`.
    Standard,
}

impl LambdaConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            LambdaConvention::Paper => "paper",
            LambdaConvention::Standard => "standard",
        }
    }
}

impl std::str::FromStr for LambdaConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(LambdaConvention::Paper),
            "standard" => Ok(LambdaConvention::Standard),
            other => Err(Error::Parse(format!("unknown lambda convention {other:?}"))),
        }
    }
}

struct TableState {
    /// Akiyama–Tanigawa working row after the last computed index.
    row: Vec<BigRational>,
    values: Vec<BigRational>,
}

/// Memoized `B⁺_n`, grown on demand by the Akiyama–Tanigawa transform.
///
/// Reads share a lock; growth takes the write lock, so concurrent callers
/// never compute the same entry twice.
pub struct BernoulliTable {
    state: RwLock<TableState>,
    max_index: usize,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Self {
        BernoulliTable {
            state: RwLock::new(TableState { row: Vec::new(), values: Vec::new() }),
            max_index,
        }
    }

    /// Process-wide table with the default index cap.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_MAX_INDEX))
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// Number of cached entries.
    pub fn cached(&self) -> usize {
        self.state.read().map(|s| s.values.len()).unwrap_or(0)
    }

    pub fn get(&self, n: usize) -> Result<BigRational> {
        if n > self.max_index {
            return Err(Error::Resource(format!(
                "Bernoulli index {n} exceeds the configured maximum {}",
                self.max_index
            )));
        }
        {
            let s = self.state.read().expect("bernoulli table lock");
            if let Some(b) = s.values.get(n) {
                return Ok(b.clone());
            }
        }
        let mut s = self.state.write().expect("bernoulli table lock");
        while s.values.len() <= n {
            let m = s.values.len();
            s.row.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let diff = &s.row[j - 1] - &s.row[j];
                s.row[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
            }
            let b = s.row[0].clone();
            s.values.push(b);
        }
        Ok(s.values[n].clone())
    }
}

/// `B⁺_n`, exact.
pub fn bernoulli(n: usize) -> Result<BigRational> {
    BernoulliTable::shared().get(n)
}

/// `B⁻_n`: same as `B⁺_n` except `B⁻_1 = -1/2`.
fn bernoulli_minus(n: usize) -> Result<BigRational> {
    if n == 1 {
        return Ok(BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }
    bernoulli(n)
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli polynomial `B_n(q) = Σ_k C(n,k) B⁻_k q^{n-k}`, exact.
pub fn bernoulli_poly(n: usize, q: &BigRational) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    let mut qpow = BigRational::one();
    // accumulate from k = n down to 0 so q^{n-k} grows incrementally
    for k in (0..=n).rev() {
        let b = bernoulli_minus(k)?;
        if !b.is_zero() {
            acc += BigRational::from_integer(binomial(n, k)) * b * &qpow;
        }
        qpow *= q;
    }
    Ok(acc)
}

/// `ζ(-m) = -B⁺_{m+1}/(m+1)`.
pub fn zeta_neg(m: usize) -> Result<BigRational> {
    let b = bernoulli(m + 1)?;
    Ok(-b / BigRational::from_integer(BigInt::from(m + 1)))
}

/// `ζ(-m, q) = -B_{m+1}(q)/(m+1)`.
pub fn hurwitz_neg(m: usize, q: &BigRational) -> Result<BigRational> {
    let b = bernoulli_poly(m + 1, q)?;
    Ok(-b / BigRational::from_integer(BigInt::from(m + 1)))
}

fn pow2(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

/// `η(-m) = (1 - 2^{1+m}) ζ(-m)`.
pub fn eta_neg(m: usize) -> Result<BigRational> {
    Ok((BigRational::one() - pow2(m + 1)) * zeta_neg(m)?)
}

/// Dirichlet lambda at `-m` under either convention.
pub fn lambda_neg(m: usize, convention: LambdaConvention) -> Result<BigRational> {
    match convention {
        LambdaConvention::Paper => Ok(eta_neg(m)? * BigRational::from_integer(BigInt::from(2))),
        LambdaConvention::Standard => Ok((BigRational::one() - pow2(m)) * zeta_neg(m)?),
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Von Staudt–Clausen: for even `n ≥ 2`, `B_n + Σ_{(p-1) | n} 1/p` is an
/// integer and the denominator of `B_n` is `Π_{(p-1) | n} p`.
pub fn von_staudt_clausen_holds(n: usize) -> Result<bool> {
    if n < 2 || n % 2 == 1 {
        return Ok(true);
    }
    let b = bernoulli(n)?;
    let mut denom = BigInt::one();
    let mut shifted = b.clone();
    for d in 1..=(n as u64) {
        if (n as u64).is_multiple_of(d) && is_prime(d + 1) {
            let p = d + 1;
            denom *= BigInt::from(p);
            shifted += BigRational::new(BigInt::one(), BigInt::from(p));
        }
    }
    Ok(shifted.is_integer() && b.denom() == &denom)
}

/// Exact partial sum `Σ_{m=0}^{n} (-1)^m g(m)/m!` of a rational sequence.
pub fn alternating_factorial_sum<F>(n: usize, mut g: F) -> Result<BigRational>
where
    F: FnMut(usize) -> Result<BigRational>,
{
    let mut acc = BigRational::zero();
    let mut fact = BigInt::one();
    for m in 0..=n {
        if m > 0 {
            fact *= BigInt::from(m);
        }
        let v = g(m)?;
        if v.is_zero() {
            continue;
        }
        let term = v / BigRational::from_integer(fact.clone());
        if m.is_odd() {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// Convenience constructor `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q`, an integer, or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    /// Independent oracle: the recurrence `Σ_{k<n+1} C(n+1,k) B⁺_k = n+1`
    /// solved for `B⁺_n` directly.
    fn bernoulli_by_recurrence(nmax: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=nmax {
            let mut s = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from_integer(binomial(n + 1, k)) * bk;
            }
            let rhs = BigRational::from_integer(BigInt::from(n + 1)) - s;
            b.push(rhs / BigRational::from_integer(binomial(n + 1, n)));
        }
        b
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), ratio(1, 1));
        assert_eq!(bernoulli(1).unwrap(), ratio(1, 2));
        assert_eq!(bernoulli(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli(12).unwrap(), ratio(-691, 2730));
    }

    #[test]
    fn akiyama_tanigawa_matches_recurrence_oracle() {
        let oracle = bernoulli_by_recurrence(40);
        for (n, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(n).unwrap(), b, "B_{n}");
        }
    }

    #[test]
    fn staudt_clausen_denominators() {
        for n in (2..=80).step_by(2) {
            assert!(von_staudt_clausen_holds(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn index_cap_is_enforced() {
        let t = BernoulliTable::new(10);
        assert!(t.get(10).is_ok());
        assert!(matches!(t.get(11), Err(Error::Resource(_))));
        assert!(matches!(bernoulli(DEFAULT_MAX_INDEX + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_poly(0, &ratio(7, 3)).unwrap(), ratio(1, 1));
        assert_eq!(bernoulli_poly(1, &ratio(1, 2)).unwrap(), ratio(0, 1));
        assert_eq!(bernoulli_poly(2, &ratio(0, 1)).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli_poly(2, &ratio(1, 2)).unwrap(), ratio(-1, 12));
        for n in 0..20 {
            let b1 = bernoulli_poly(n, &ratio(1, 1)).unwrap();
            assert_eq!(b1, bernoulli(n).unwrap());
            let b0 = bernoulli_poly(n, &ratio(0, 1)).unwrap();
            let expect = if n == 1 { ratio(-1, 2) } else { bernoulli(n).unwrap() };
            assert_eq!(b0, expect);
        }
    }

    #[test]
    fn zeta_family_at_negative_integers() {
        assert_eq!(zeta_neg(0).unwrap(), ratio(-1, 2));
        assert_eq!(zeta_neg(1).unwrap(), ratio(-1, 12));
        assert_eq!(zeta_neg(2).unwrap(), ratio(0, 1));
        assert_eq!(zeta_neg(11).unwrap(), ratio(691, 32760));
        assert_eq!(hurwitz_neg(0, &ratio(1, 3)).unwrap(), ratio(1, 2) - ratio(1, 3));
        assert_eq!(hurwitz_neg(1, &ratio(1, 2)).unwrap(), ratio(1, 24));
        for m in 0..12 {
            assert_eq!(hurwitz_neg(m, &ratio(1, 1)).unwrap(), zeta_neg(m).unwrap());
        }
        assert_eq!(eta_neg(0).unwrap(), ratio(1, 2));
        assert_eq!(eta_neg(2).unwrap(), ratio(0, 1));
        assert_eq!(eta_neg(7).unwrap(), ratio(-17, 16));
        assert_eq!(lambda_neg(0, LambdaConvention::Paper).unwrap(), ratio(1, 1));
        assert_eq!(lambda_neg(0, LambdaConvention::Standard).unwrap(), ratio(0, 1));
        assert_eq!(lambda_neg(1, LambdaConvention::Standard).unwrap(), ratio(1, 12));
    }

    #[test]
    fn polynomial_shift_and_symmetry() {
        for q in [ratio(0, 1), ratio(1, 2), ratio(1, 1), ratio(2, 1), ratio(1, 3)] {
            for n in 1..=30usize {
                let lhs = bernoulli_poly(n, &(&q + ratio(1, 1))).unwrap() - bernoulli_poly(n, &q).unwrap();
                let rhs = BigRational::from_integer(BigInt::from(n)) * num_traits::pow(q.clone(), n - 1);
                assert_eq!(lhs, rhs, "shift n={n} q={q}");
                let refl = bernoulli_poly(n, &(ratio(1, 1) - &q)).unwrap();
                let b = bernoulli_poly(n, &q).unwrap();
                assert_eq!(refl, if n % 2 == 0 { b } else { -b }, "reflection n={n} q={q}");
            }
        }
    }

    #[test]
    fn recurrence_and_sign_pattern() {
        for n in 1..=60usize {
            let mut s = BigRational::zero();
            for k in 0..=n {
                s += BigRational::from_integer(binomial(n + 1, k)) * bernoulli(k).unwrap();
            }
            assert_eq!(s, BigRational::from_integer(BigInt::from(n + 1)));
            let b = bernoulli(n).unwrap();
            if n >= 3 && n % 2 == 1 {
                assert!(b.is_zero());
            }
            if n % 2 == 0 {
                let positive = (n / 2) % 2 == 1;
                assert_eq!(b.is_positive(), positive, "sign of B_{n}");
            }
        }
    }

    #[test]
    fn lambda_is_mean_of_zeta_and_eta() {
        for m in 0..=50 {
            let mean = (zeta_neg(m).unwrap() + eta_neg(m).unwrap()) / ratio(2, 1);
            assert_eq!(lambda_neg(m, LambdaConvention::Standard).unwrap(), mean);
            assert_eq!(lambda_neg(m, LambdaConvention::Paper).unwrap(), eta_neg(m).unwrap() * ratio(2, 1));
        }
    }

    #[test]
    fn zeta_over_factorial_bound() {
        // |ζ(-m)|/m! ≤ 4 (m+1)/(2π)^{m+1}; compared in f64 since both sides are tame for m ≤ 120
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut fact = 1.0f64;
        for m in 1..=120usize {
            fact *= m as f64;
            let z = zeta_neg(m).unwrap();
            let zf = z.numer().to_string().parse::<f64>().unwrap() / z.denom().to_string().parse::<f64>().unwrap();
            let lhs = zf.abs() / fact;
            let rhs = 4.0 * (m as f64 + 1.0) / two_pi.powi(m as i32 + 1);
            assert!(lhs <= rhs, "m = {m}: {lhs} > {rhs}");
        }
    }

    #[test]
    fn alternating_sum_of_zeta_values() {
        // Σ (-1)^m ζ(-m)/m! = 1/(e-1) - 1
        let s = alternating_factorial_sum(80, zeta_neg).unwrap();
        let f = s.numer().to_string().parse::<f64>().unwrap() / s.denom().to_string().parse::<f64>().unwrap();
        assert!((f - (1.0 / (std::f64::consts::E - 1.0) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1e5").is_err());
    }
}
