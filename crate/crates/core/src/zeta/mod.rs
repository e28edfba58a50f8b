//! The zeta family: Γ, ζ, ζ(s, a), Φ(z, s, a), η, λ and their `e^{-b/t}`
//! extensions, routed to exact rationals, series, or quadrature.
//!
//! Routing rule: a real non-positive integer `s` with `b = 0` always goes to
//! the exact Bernoulli path; everything else is floating.

mod gamma;
mod series;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use gamma::gamma;
pub use series::{eta_borwein, hurwitz_em, lerch_direct};

use crate::error::{Error, Result};
use crate::exact::{self, LambdaConvention};
use crate::family::FamilyParams;
use crate::numerics::{HPComplex, HPReal};
use crate::quadrature::{self, default_tolerance, HalfLineIntegrand, Kernel, QuadratureResult};

/// Largest `|z|` summed directly; beyond it Lerch goes through quadrature.
pub const LERCH_DIRECT_RADIUS: f64 = 0.9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Function {
    Gamma,
    GammaB,
    Zeta,
    ZetaB,
    Hurwitz,
    HurwitzB,
    Lerch,
    LerchB,
    Eta,
    Lambda,
}

impl Function {
    pub const ALL: [Function; 10] = [
        Function::Gamma,
        Function::GammaB,
        Function::Zeta,
        Function::ZetaB,
        Function::Hurwitz,
        Function::HurwitzB,
        Function::Lerch,
        Function::LerchB,
        Function::Eta,
        Function::Lambda,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Function::Gamma => "gamma",
            Function::GammaB => "gamma_b",
            Function::Zeta => "zeta",
            Function::ZetaB => "zeta_b",
            Function::Hurwitz => "hurwitz",
            Function::HurwitzB => "hurwitz_b",
            Function::Lerch => "lerch",
            Function::LerchB => "lerch_b",
            Function::Eta => "eta",
            Function::Lambda => "lambda",
        }
    }

    /// Normalization used when a request does not name one: `zeta_b` has no
    /// `1/Γ(s)` in its printed integral, `hurwitz_b` and `lerch_b` do.
    pub fn default_normalization(self) -> Normalization {
        match self {
            Function::ZetaB => Normalization::Unnormalized,
            _ => Normalization::GammaNormalized,
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Function {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Function::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown function {s:?}")))
    }
}

/// Whether an extended integral is divided by `Γ(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    GammaNormalized,
    Unnormalized,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::GammaNormalized => "gamma-normalized",
            Normalization::Unnormalized => "unnormalized",
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma-normalized" | "normalized" => Ok(Normalization::GammaNormalized),
            "unnormalized" => Ok(Normalization::Unnormalized),
            other => Err(Error::Parse(format!("unknown normalization {other:?}"))),
        }
    }
}

/// The three extended members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extended {
    ZetaB,
    HurwitzB,
    LerchB,
}

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Exact,
    Spouge,
    Borwein,
    EulerMaclaurin,
    DirectSeries,
    Quadrature,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Exact => "exact",
            Route::Spouge => "spouge",
            Route::Borwein => "borwein",
            Route::EulerMaclaurin => "euler-maclaurin",
            Route::DirectSeries => "direct-series",
            Route::Quadrature => "quadrature",
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalRequest {
    pub function: Function,
    pub s: HPComplex,
    pub a: HPComplex,
    pub z: HPComplex,
    pub b: HPReal,
    /// `None` picks the function's printed form.
    pub normalization: Option<Normalization>,
    /// Required for `lambda`; never defaulted.
    pub lambda_convention: Option<LambdaConvention>,
    /// Exact value of `a` when it is rational, enabling exact `ζ(-m, a)`.
    pub a_exact: Option<BigRational>,
}

impl EvalRequest {
    pub fn new(function: Function, s: HPComplex) -> Self {
        let d = s.digits();
        EvalRequest {
            function,
            s,
            a: HPComplex::one(d),
            z: HPComplex::one(d),
            b: HPReal::zero(d),
            normalization: None,
            lambda_convention: None,
            a_exact: Some(BigRational::from_integer(BigInt::from(1))),
        }
    }

    pub fn with_a(mut self, a: HPComplex) -> Self {
        self.a_exact = if a.is_real() { a.re.to_rational() } else { None };
        self.a = a;
        self
    }

    pub fn with_a_exact(mut self, a: BigRational) -> Self {
        self.a = HPComplex::from_real(HPReal::from_ratio(&a, self.s.digits()));
        self.a_exact = Some(a);
        self
    }

    pub fn with_z(mut self, z: HPComplex) -> Self {
        self.z = z;
        self
    }

    pub fn with_b(mut self, b: HPReal) -> Self {
        self.b = b;
        self
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = Some(n);
        self
    }

    pub fn with_convention(mut self, c: LambdaConvention) -> Self {
        self.lambda_convention = Some(c);
        self
    }

    fn digits(&self) -> u32 {
        self.s.digits()
    }
}

/// Result of [`evaluate`].
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: HPComplex,
    /// Present when the exact path was taken.
    pub exact: Option<BigRational>,
    pub abs_error_estimate: HPReal,
    pub route: Route,
}

impl Evaluation {
    fn exact(r: BigRational, digits: u32) -> Self {
        Evaluation {
            value: HPComplex::from_real(HPReal::from_ratio(&r, digits)),
            exact: Some(r),
            abs_error_estimate: HPReal::zero(digits),
            route: Route::Exact,
        }
    }

    fn floating(value: HPComplex, route: Route) -> Self {
        let d = value.digits();
        // series paths carry ~10 guard digits beyond the working precision
        let err = &value.abs().max(&HPReal::one(d)) * &HPReal::pow10(-(d as i64 - 2), d);
        Evaluation { value, exact: None, abs_error_estimate: err, route }
    }

    fn quadrature(q: QuadratureResult) -> Self {
        Evaluation { value: q.value, exact: None, abs_error_estimate: q.abs_error_estimate, route: Route::Quadrature }
    }
}

/// `m` when `s = -m` is a real non-positive integer.
pub fn non_positive_integer(s: &HPComplex) -> Option<usize> {
    match s.as_integer() {
        Some(n) if n <= 0 => Some((-n) as usize),
        _ => None,
    }
}

fn is_one(z: &HPComplex) -> bool {
    z.is_real() && z.re == HPReal::one(z.digits())
}

/// `ζ(s)`: exact at `s = -m`, otherwise `η(s)/(1 - 2^{1-s})` for `Re(s) > 0`.
pub fn zeta(s: &HPComplex) -> Result<HPComplex> {
    Ok(zeta_eval(s)?.value)
}

fn zeta_eval(s: &HPComplex) -> Result<Evaluation> {
    let d = s.digits();
    if let Some(m) = non_positive_integer(s) {
        return Ok(Evaluation::exact(exact::zeta_neg(m)?, d));
    }
    if is_one(s) {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    if !s.re.is_positive() {
        return Err(Error::Domain("zeta is evaluated only for Re(s) > 0 or s = 0, -1, -2, ...".into()));
    }
    let wd = d + 10;
    let sw = s.with_digits(wd);
    let two = HPComplex::from_real(HPReal::from_i64(2, wd));
    let factor = &HPComplex::one(wd) - &two.pow(&(&HPComplex::one(wd) - &sw));
    if factor.abs().to_f64() < 1e-6 {
        // near the zeros of 1 - 2^{1-s} the eta route loses digits
        return Ok(Evaluation::floating(hurwitz_em(s, &HPComplex::one(d))?, Route::EulerMaclaurin));
    }
    let v = &eta_borwein(&sw) / &factor;
    Ok(Evaluation::floating(v.with_digits(d), Route::Borwein))
}

/// `ζ(s, a)` for `Re(a) > 0`: exact at `s = -m` with rational `a`,
/// Euler–Maclaurin for `Re(s) > 0`, `s ≠ 1`.
pub fn hurwitz(s: &HPComplex, a: &HPComplex) -> Result<HPComplex> {
    let req = EvalRequest::new(Function::Hurwitz, s.clone()).with_a(a.clone());
    Ok(hurwitz_eval(&req)?.value)
}

fn hurwitz_eval(req: &EvalRequest) -> Result<Evaluation> {
    let (s, a) = (&req.s, &req.a);
    let d = req.digits();
    if !a.re.is_positive() {
        return Err(Error::Domain("hurwitz needs Re(a) > 0".into()));
    }
    if let Some(m) = non_positive_integer(s) {
        if let Some(q) = &req.a_exact {
            return Ok(Evaluation::exact(exact::hurwitz_neg(m, q)?, d));
        }
        return Ok(Evaluation::floating(hurwitz_neg_floating(m, a)?, Route::Exact));
    }
    if is_one(s) {
        return Err(Error::Pole("hurwitz at s = 1".into()));
    }
    if !s.re.is_positive() {
        return Err(Error::Domain("hurwitz is evaluated only for Re(s) > 0 or s = 0, -1, -2, ...".into()));
    }
    Ok(Evaluation::floating(hurwitz_em(s, a)?, Route::EulerMaclaurin))
}

/// `-B_{m+1}(a)/(m+1)` with exact Bernoulli numbers and a floating `a`.
fn hurwitz_neg_floating(m: usize, a: &HPComplex) -> Result<HPComplex> {
    let d = a.digits();
    let n = m + 1;
    let mut acc = HPComplex::zero(d);
    let mut apow = HPComplex::one(d);
    for k in (0..=n).rev() {
        let bk = if k == 1 { exact::ratio(-1, 2) } else { exact::bernoulli(k)? };
        let c = BigRational::from_integer(exact::binomial(n, k)) * bk;
        acc = &acc + &apow.scale(&HPReal::from_ratio(&c, d));
        apow = &apow * a;
    }
    Ok(acc.scale(&HPReal::from_i64(-(n as i64), d).recip()))
}

/// `Φ(z, s, a)` for `|z| ≤ 1`, `Re(a) > 0`, `Re(s) > 0` (`> 1` when `z = 1`).
pub fn lerch(z: &HPComplex, s: &HPComplex, a: &HPComplex) -> Result<HPComplex> {
    let req = EvalRequest::new(Function::Lerch, s.clone()).with_a(a.clone()).with_z(z.clone());
    Ok(lerch_eval(&req)?.value)
}

fn lerch_eval(req: &EvalRequest) -> Result<Evaluation> {
    let (z, s, a) = (&req.z, &req.s, &req.a);
    let d = req.digits();
    if !a.re.is_positive() {
        return Err(Error::Domain("lerch needs Re(a) > 0".into()));
    }
    let zabs = z.abs();
    if zabs > HPReal::one(zabs.digits()) {
        return Err(Error::Domain("lerch needs |z| <= 1".into()));
    }
    if z.is_zero() {
        return Ok(Evaluation::floating(a.pow(&-s), Route::DirectSeries));
    }
    if is_one(z) {
        if non_positive_integer(s).is_none() && s.re <= HPReal::one(d) {
            return Err(Error::Domain("lerch at z = 1 needs Re(s) > 1".into()));
        }
        return hurwitz_eval(req);
    }
    if !s.re.is_positive() {
        return Err(Error::Domain("lerch needs Re(s) > 0".into()));
    }
    if zabs.to_f64() <= LERCH_DIRECT_RADIUS {
        return Ok(Evaluation::floating(lerch_direct(z, s, a)?, Route::DirectSeries));
    }
    // Φ = (1/Γ(s)) ∫ t^{s-1} e^{-at}/(1 - z e^{-t}) dt
    let f = HalfLineIntegrand::new(s.re.clone(), HPReal::zero(d), Kernel::Lerch { a: a.clone(), z: z.clone() });
    let q = quadrature::integrate_halfline(&f, &s.im, &default_tolerance(d))?;
    let g = gamma(s)?;
    let value = &q.value / &g;
    let err = &q.abs_error_estimate / &g.abs();
    Ok(Evaluation { value, exact: None, abs_error_estimate: err, route: Route::Quadrature })
}

/// `η(s)`: exact at `s = -m`, Borwein-accelerated alternating series for `Re(s) > 0`.
pub fn eta(s: &HPComplex) -> Result<HPComplex> {
    Ok(eta_eval(s)?.value)
}

fn eta_eval(s: &HPComplex) -> Result<Evaluation> {
    if let Some(m) = non_positive_integer(s) {
        return Ok(Evaluation::exact(exact::eta_neg(m)?, s.digits()));
    }
    if !s.re.is_positive() {
        return Err(Error::Domain("eta is evaluated only for Re(s) > 0 or s = 0, -1, -2, ...".into()));
    }
    Ok(Evaluation::floating(eta_borwein(s), Route::Borwein))
}

/// Dirichlet lambda. `Paper` is `2η(s)`; `Standard` is `2^{-s} ζ(s, 1/2)`,
/// computed through Hurwitz so it is independent of the η route.
pub fn lambda(s: &HPComplex, convention: LambdaConvention) -> Result<HPComplex> {
    Ok(lambda_eval(s, convention)?.value)
}

fn lambda_eval(s: &HPComplex, convention: LambdaConvention) -> Result<Evaluation> {
    let d = s.digits();
    if let Some(m) = non_positive_integer(s) {
        return Ok(Evaluation::exact(exact::lambda_neg(m, convention)?, d));
    }
    match convention {
        LambdaConvention::Paper => {
            let e = eta_eval(s)?;
            Ok(Evaluation::floating(e.value.scale(&HPReal::from_i64(2, d)), e.route))
        }
        LambdaConvention::Standard => {
            if is_one(s) {
                return Err(Error::Pole("lambda at s = 1".into()));
            }
            if !s.re.is_positive() {
                return Err(Error::Domain("lambda is evaluated only for Re(s) > 0 or s = 0, -1, -2, ...".into()));
            }
            let half = HPComplex::from_real(HPReal::from_f64(0.5, d));
            let h = hurwitz_em(s, &half)?;
            let two = HPComplex::from_real(HPReal::from_i64(2, d));
            Ok(Evaluation::floating(&two.pow(&-s) * &h, Route::EulerMaclaurin))
        }
    }
}

fn extended_integrand(kind: Extended, sigma: &HPReal, params: &FamilyParams) -> HalfLineIntegrand {
    let kernel = match kind {
        Extended::ZetaB => Kernel::Bose,
        Extended::HurwitzB => Kernel::Hurwitz { a: params.a.clone() },
        Extended::LerchB => Kernel::Lerch { a: params.a.clone(), z: params.z.clone() },
    };
    HalfLineIntegrand::new(sigma.clone(), params.b.clone(), kernel)
}

/// The extended integral `∫₀^∞ t^{s-1} K(t) e^{-b/t} dt`, divided by `Γ(s)`
/// when gamma-normalized.
///
/// Gamma-normalized at `s = -m` the value is exactly 0 for `b > 0` (a zero
/// of `1/Γ` times a finite integral) and a pole for `b = 0`.
pub fn extended(
    kind: Extended,
    s: &HPComplex,
    params: &FamilyParams,
    normalization: Normalization,
) -> Result<QuadratureResult> {
    let d = s.digits().max(params.digits());
    extended_tol(kind, s, params, normalization, &default_tolerance(d))
}

pub fn extended_tol(
    kind: Extended,
    s: &HPComplex,
    params: &FamilyParams,
    normalization: Normalization,
    tol: &HPReal,
) -> Result<QuadratureResult> {
    let d = s.digits().max(params.digits());
    let f = extended_integrand(kind, &s.re, params);
    let m = non_positive_integer(s);
    if normalization == Normalization::GammaNormalized && m.is_some() && params.b.is_zero() {
        return Err(Error::Pole(format!("1/Gamma(s) * integral at s = {} with b = 0", s.re.to_decimal(6))));
    }
    let q = quadrature::integrate_halfline(&f, &s.im, tol)?;
    match normalization {
        Normalization::Unnormalized => Ok(q),
        Normalization::GammaNormalized if m.is_some() => Ok(QuadratureResult {
            value: HPComplex::zero(d),
            abs_error_estimate: HPReal::zero(d),
            evaluations: q.evaluations,
            level: q.level,
        }),
        Normalization::GammaNormalized => {
            let g = gamma(s)?;
            Ok(QuadratureResult {
                value: &q.value / &g,
                abs_error_estimate: &q.abs_error_estimate / &g.abs(),
                evaluations: q.evaluations,
                level: q.level,
            })
        }
    }
}

/// Unnormalized extended values at `s = 0, -1, ..., -(count-1)` on one mesh.
pub fn extended_at_negative_integers(
    kind: Extended,
    params: &FamilyParams,
    count: usize,
    tol: &HPReal,
) -> Result<Vec<QuadratureResult>> {
    let d = params.digits().max(tol.digits());
    let f = extended_integrand(kind, &HPReal::zero(d), params);
    quadrature::integrate_halfline_moments(&f, &HPReal::zero(d), count, tol)
}

/// Evaluates any member of the family per the routing rule.
pub fn evaluate(req: &EvalRequest) -> Result<Evaluation> {
    let d = req.digits();
    let params = FamilyParams::new(d).with_a(req.a.clone()).with_b(req.b.clone()).with_z(req.z.clone());
    if req.b.is_negative() {
        return Err(Error::Domain("b must be non-negative".into()));
    }
    match req.function {
        Function::Gamma => Ok(Evaluation::floating(gamma(&req.s)?, Route::Spouge)),
        Function::GammaB => {
            if req.b.is_zero() && non_positive_integer(&req.s).is_some() {
                return Err(Error::Pole("gamma at a non-positive integer".into()));
            }
            Ok(Evaluation::quadrature(quadrature::gamma_b(&req.s, &req.b)?))
        }
        Function::Zeta => zeta_eval(&req.s),
        Function::Hurwitz => hurwitz_eval(req),
        Function::Lerch => lerch_eval(req),
        Function::Eta => eta_eval(&req.s),
        Function::Lambda => {
            let c = req
                .lambda_convention
                .ok_or_else(|| Error::Domain("lambda needs an explicit convention (paper or standard)".into()))?;
            lambda_eval(&req.s, c)
        }
        Function::ZetaB | Function::HurwitzB | Function::LerchB => {
            let kind = match req.function {
                Function::ZetaB => Extended::ZetaB,
                Function::HurwitzB => Extended::HurwitzB,
                _ => Extended::LerchB,
            };
            let norm = req.normalization.unwrap_or(req.function.default_normalization());
            if req.b.is_zero() && non_positive_integer(&req.s).is_some() {
                // b = 0 at s = -m: the exact route, or a pole of Γ(s) when unnormalized
                if norm == Normalization::Unnormalized {
                    return Err(Error::Pole("Gamma(s) factor at a non-positive integer".into()));
                }
                return match kind {
                    Extended::ZetaB => zeta_eval(&req.s),
                    Extended::HurwitzB => hurwitz_eval(req),
                    Extended::LerchB => lerch_eval(req),
                };
            }
            Ok(Evaluation::quadrature(extended(kind, &req.s, &params, norm)?))
        }
    }
}
