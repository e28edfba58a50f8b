//! Compensated summation and the convergent-series driver.

use super::{HPComplex, HPReal};
use crate::error::{Error, Result};

/// Scalars the series driver can accumulate.
pub trait Summand: Clone {
    fn zero_like(digits: u32) -> Self;
    fn magnitude(&self) -> HPReal;
    fn digits(&self) -> u32;
}

impl Summand for HPReal {
    fn zero_like(digits: u32) -> Self {
        HPReal::zero(digits)
    }
    fn magnitude(&self) -> HPReal {
        self.abs()
    }
    fn digits(&self) -> u32 {
        HPReal::digits(self)
    }
}

impl Summand for HPComplex {
    fn zero_like(digits: u32) -> Self {
        HPComplex::zero(digits)
    }
    fn magnitude(&self) -> HPReal {
        self.abs()
    }
    fn digits(&self) -> u32 {
        HPComplex::digits(self)
    }
}

/// Running Neumaier sum.
#[derive(Clone, Debug)]
pub struct CompensatedSum {
    sum: HPReal,
    comp: HPReal,
    abs_total: HPReal,
}

impl CompensatedSum {
    pub fn new(digits: u32) -> Self {
        CompensatedSum {
            sum: HPReal::zero(digits),
            comp: HPReal::zero(digits),
            abs_total: HPReal::zero(digits),
        }
    }

    pub fn push(&mut self, x: &HPReal) {
        let t = &self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = &self.comp + &(&(&self.sum - &t) + x);
        } else {
            self.comp = &self.comp + &(&(x - &t) + &self.sum);
        }
        self.sum = t;
        self.abs_total = &self.abs_total + &x.abs();
    }

    pub fn value(&self) -> HPReal {
        &self.sum + &self.comp
    }

    /// `Σ|x|` of everything pushed so far.
    pub fn abs_total(&self) -> &HPReal {
        &self.abs_total
    }
}

/// Complex counterpart of [`CompensatedSum`], compensating each part.
#[derive(Clone, Debug)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new(digits: u32) -> Self {
        CompensatedComplexSum { re: CompensatedSum::new(digits), im: CompensatedSum::new(digits) }
    }

    pub fn push(&mut self, z: &HPComplex) {
        self.re.push(&z.re);
        if !z.im.is_zero() {
            self.im.push(&z.im);
        }
    }

    pub fn value(&self) -> HPComplex {
        HPComplex::new(self.re.value(), self.im.value())
    }
}

/// Sum of a finite sequence with error `≤ 2·u·Σ|x|`, `u = 10^(1-p)`.
///
/// The empty sum is zero at the default precision.
pub fn compensated_sum(terms: &[HPReal]) -> HPReal {
    let digits = terms
        .iter()
        .map(|t| t.digits())
        .max()
        .unwrap_or_else(super::default_digits);
    let mut acc = CompensatedSum::new(digits);
    for t in terms {
        acc.push(t);
    }
    acc.value()
}

/// Complex version of [`compensated_sum`].
pub fn compensated_sum_complex(terms: &[HPComplex]) -> HPComplex {
    let digits = terms
        .iter()
        .map(|t| t.digits())
        .max()
        .unwrap_or_else(super::default_digits);
    let mut acc = CompensatedComplexSum::new(digits);
    for t in terms {
        acc.push(t);
    }
    acc.value()
}

trait Accumulator<T> {
    fn push(&mut self, x: &T);
    fn value(&self) -> T;
}

impl Accumulator<HPReal> for CompensatedSum {
    fn push(&mut self, x: &HPReal) {
        CompensatedSum::push(self, x)
    }
    fn value(&self) -> HPReal {
        CompensatedSum::value(self)
    }
}

impl Accumulator<HPComplex> for CompensatedComplexSum {
    fn push(&mut self, x: &HPComplex) {
        CompensatedComplexSum::push(self, x)
    }
    fn value(&self) -> HPComplex {
        CompensatedComplexSum::value(self)
    }
}

/// How the driver decides a series has converged.
#[derive(Clone, Debug, PartialEq)]
pub enum StopRule {
    /// Stop after `k` consecutive terms with `|term| ≤ tolerance`.
    ConsecutiveSmall(usize),
    /// Terms decay at least geometrically with the given ratio, so the tail
    /// after term `n` is bounded by `|t_n|·r/(1-r)`.
    TailBound { ratio: f64 },
}

#[derive(Clone, Debug)]
pub struct ConvergencePolicy {
    pub tolerance: HPReal,
    pub max_terms: usize,
    pub stop_rule: StopRule,
}

impl ConvergencePolicy {
    pub fn new(tolerance: HPReal, max_terms: usize, stop_rule: StopRule) -> Result<Self> {
        if !tolerance.is_positive() {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        match stop_rule {
            StopRule::ConsecutiveSmall(k) if k < 2 => {
                return Err(Error::Domain("consecutive-small-terms needs k >= 2".into()))
            }
            StopRule::TailBound { ratio } if !(ratio > 0.0 && ratio < 1.0) => {
                return Err(Error::Domain("tail-bound ratio must lie in (0, 1)".into()))
            }
            _ => {}
        }
        Ok(ConvergencePolicy { tolerance, max_terms, stop_rule })
    }

    /// Three consecutive terms below `10^-(p-10)`, at most `max_terms` terms.
    pub fn standard(digits: u32, max_terms: usize) -> Self {
        ConvergencePolicy {
            tolerance: HPReal::pow10(-(digits as i64 - 10), digits),
            max_terms,
            stop_rule: StopRule::ConsecutiveSmall(3),
        }
    }

    pub fn digits(&self) -> u32 {
        self.tolerance.digits()
    }
}

/// Outcome of summing a series.
#[derive(Clone, Debug)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub tail_estimate: HPReal,
    pub converged: bool,
}

impl<T> SeriesResult<T> {
    /// `Err(NotConverged)` when the term budget ran out.
    pub fn check(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged(format!(
                "{} terms, tail estimate {}",
                self.terms_used,
                self.tail_estimate.to_decimal(6)
            )))
        }
    }
}

fn drive<T, A, F>(mut term_at: F, policy: &ConvergencePolicy, mut acc: A) -> SeriesResult<T>
where
    T: Summand,
    A: Accumulator<T>,
    F: FnMut(usize) -> T,
{
    let d = policy.digits();
    let tol = &policy.tolerance;
    let mut run = 0usize;
    let mut run_max = HPReal::zero(d);
    let mut terms_used = 0usize;
    let mut converged = false;
    let mut tail = HPReal::zero(d);

    for n in 0..policy.max_terms {
        let t = term_at(n);
        acc.push(&t);
        terms_used = n + 1;
        let mag = t.magnitude();
        match policy.stop_rule {
            StopRule::ConsecutiveSmall(k) => {
                if &mag <= tol {
                    run += 1;
                    run_max = run_max.max(&mag);
                } else {
                    run = 0;
                    run_max = HPReal::zero(d);
                }
                tail = if run > 0 { run_max.clone() } else { mag.clone() };
                if run >= k {
                    converged = true;
                    break;
                }
            }
            StopRule::TailBound { ratio } => {
                let r = HPReal::from_f64(ratio, d);
                tail = &(&mag * &r) / &(&HPReal::one(d) - &r);
                if &tail <= tol {
                    converged = true;
                    break;
                }
            }
        }
    }
    SeriesResult { value: acc.value(), terms_used, tail_estimate: tail, converged }
}

/// Sums `Σ_{n≥0} term_at(n)` with compensated accumulation.
///
/// When `max_terms` is exhausted the partial sum is still returned, with
/// `converged = false`.
pub fn sum_series<F>(term_at: F, policy: &ConvergencePolicy) -> SeriesResult<HPReal>
where
    F: FnMut(usize) -> HPReal,
{
    drive(term_at, policy, CompensatedSum::new(policy.digits()))
}

pub fn sum_series_complex<F>(term_at: F, policy: &ConvergencePolicy) -> SeriesResult<HPComplex>
where
    F: FnMut(usize) -> HPComplex,
{
    drive(term_at, policy, CompensatedComplexSum::new(policy.digits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn empty_and_cancelling_sums() {
        assert!(compensated_sum(&[]).is_zero());
        let d = 64;
        let s = compensated_sum(&[HPReal::one(d), -HPReal::one(d)]);
        assert!(s.is_zero());
    }

    #[test]
    fn many_tiny_terms_match_exact_rational_sum() {
        let d = 50;
        let tiny = HPReal::parse("1e-30", d).unwrap();
        let n = 1_000_000u64;
        let terms = vec![tiny.clone(); n as usize];
        let s = compensated_sum(&terms);
        // oracle: exact rational value of the binary term, times n
        let exact = tiny.to_rational().unwrap() * BigRational::from_integer(BigInt::from(n));
        let exact_f = HPReal::from_ratio(&exact, d + 30);
        let rel = ((&s.with_digits(d + 30) - &exact_f) / &exact_f).abs();
        assert!(rel < HPReal::pow10(-40, d), "relative error {rel}");
        let target = HPReal::parse("1e-24", d).unwrap();
        assert!(((&s - &target) / &target).abs() < HPReal::pow10(-40, d));
    }

    #[test]
    fn exponential_series() {
        let d = 64;
        let policy = ConvergencePolicy::standard(d, 500);
        let mut term = HPReal::one(d);
        let r = sum_series(
            |m| {
                if m > 0 {
                    term = &term / &HPReal::from_i64(-(m as i64), d);
                }
                term.clone()
            },
            &policy,
        );
        assert!(r.converged);
        let expect = HPReal::from_i64(-1, d).exp();
        assert!((&r.value - &expect).abs() < HPReal::pow10(-54, d));
        assert_eq!(r.value.to_decimal(17), "0.36787944117144232");
    }

    #[test]
    fn geometric_series_closed_form() {
        let d = 64;
        let policy = ConvergencePolicy::standard(d, 1000);
        let r = sum_series(|n| HPReal::from_i64(-(n as i64) - 1, d).exp(), &policy);
        assert!(r.converged);
        let e = HPReal::e(d);
        let expect = (&e - &HPReal::one(d)).recip();
        assert!((&r.value - &expect).abs() < HPReal::pow10(-53, d));
        assert_eq!(r.value.to_decimal(17), "0.58197670686932642");
    }

    #[test]
    fn zero_series_stops_after_k_terms() {
        let d = 64;
        let policy = ConvergencePolicy::standard(d, 100);
        let r = sum_series(|_| HPReal::zero(d), &policy);
        assert!(r.converged);
        assert_eq!(r.terms_used, 3);
        assert!(r.value.is_zero());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let d = 64;
        let policy = ConvergencePolicy::standard(d, 10);
        let r = sum_series(|n| HPReal::from_i64(n as i64 + 1, d).recip(), &policy);
        assert!(!r.converged);
        assert_eq!(r.terms_used, 10);
        assert!(r.check().is_err());
    }

    #[test]
    fn tail_bound_rule() {
        let d = 64;
        let tol = HPReal::pow10(-30, d);
        let policy = ConvergencePolicy::new(tol.clone(), 1000, StopRule::TailBound { ratio: 0.5 }).unwrap();
        let half = HPReal::from_f64(0.5, d);
        let r = sum_series(|n| half.powi(n as i64), &policy);
        assert!(r.converged);
        assert!(r.tail_estimate <= tol);
        assert!((&r.value - &HPReal::from_i64(2, d)).abs() <= &tol * &HPReal::from_i64(2, d));
    }

    #[test]
    fn policy_validation() {
        let d = 64;
        assert!(ConvergencePolicy::new(HPReal::zero(d), 10, StopRule::ConsecutiveSmall(3)).is_err());
        assert!(ConvergencePolicy::new(HPReal::one(d), 0, StopRule::ConsecutiveSmall(3)).is_err());
        assert!(ConvergencePolicy::new(HPReal::one(d), 10, StopRule::ConsecutiveSmall(1)).is_err());
        assert!(ConvergencePolicy::new(HPReal::one(d), 10, StopRule::TailBound { ratio: 1.0 }).is_err());
    }
}
