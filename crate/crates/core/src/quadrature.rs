//! Half-line integrals `∫₀^∞ t^{s-1} K(t) e^{-b/t} dt` by the substitution
//! `t = e^u` and the trapezoid rule on `u`.
//!
//! After the substitution the integrand decays doubly exponentially on the
//! right (`e^{-e^u}`), and on the left either doubly exponentially (`b > 0`)
//! or like `e^{(σ-σ₀)u}` (`b = 0`). The window is sized from a cheap `f64`
//! log-magnitude model; the mesh is halved, reusing every node, until two
//! levels agree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyParams};
use crate::numerics::{CompensatedComplexSum, HPComplex, HPReal};

/// Kernel `K(t)` multiplying `t^{s-1} e^{-b/t}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Kernel {
    /// `e^{-t}`
    Plain,
    /// `1/(e^t - 1)`
    Bose,
    /// `e^{-at}/(1 - e^{-t})`
    Hurwitz { a: HPComplex },
    /// `e^{-at}/(1 - z e^{-t})`
    Lerch { a: HPComplex, z: HPComplex },
}

#[derive(Clone, Debug)]
pub struct HalfLineIntegrand {
    pub sigma: HPReal,
    pub b: HPReal,
    pub kernel: Kernel,
}

/// Value, error estimate and effort of one quadrature.
#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: HPComplex,
    pub abs_error_estimate: HPReal,
    pub evaluations: usize,
    pub level: u32,
}

/// Largest `|τ|` accepted by the oscillatory checks.
pub const MAX_TAU: f64 = 16.0;

const GUARD_DIGITS: u32 = 10;
const MAX_LEVEL: u32 = 12;
const MAX_NODES: usize = 1 << 21;
const SCAN_STEP: f64 = 0.125;
const SCAN_LIMIT: f64 = 20_000.0;
// extra headroom below the tolerance for the truncated tails
const TAIL_MARGIN: f64 = 9.210_340_371_976_184; // ln 1e4

/// Default quadrature tolerance: half the working digits.
pub fn default_tolerance(digits: u32) -> HPReal {
    HPReal::pow10(-((digits / 2) as i64), digits)
}

fn is_one(z: &HPComplex) -> bool {
    z.is_real() && z.re == HPReal::one(z.digits())
}

fn ln_expm1(t: f64, u: f64) -> f64 {
    if t < 1e-10 {
        u
    } else if t > 40.0 {
        t
    } else {
        t.exp_m1().ln()
    }
}

fn ln_one_minus_exp_neg(t: f64, u: f64) -> f64 {
    if t < 1e-10 {
        u
    } else {
        (-(-t).exp_m1()).ln()
    }
}

impl HalfLineIntegrand {
    pub fn new(sigma: HPReal, b: HPReal, kernel: Kernel) -> Self {
        HalfLineIntegrand { sigma, b, kernel }
    }

    fn digits(&self) -> u32 {
        let k = match &self.kernel {
            Kernel::Plain | Kernel::Bose => 0,
            Kernel::Hurwitz { a } => a.digits(),
            Kernel::Lerch { a, z } => a.digits().max(z.digits()),
        };
        self.sigma.digits().max(self.b.digits()).max(k)
    }

    /// Checks parameters for `count` moments `σ, σ-1, ..., σ-count+1`.
    fn validate(&self, count: usize) -> Result<()> {
        if self.b.is_negative() {
            return Err(Error::Domain("b must be non-negative".into()));
        }
        let (a, z) = match &self.kernel {
            Kernel::Plain | Kernel::Bose => (None, None),
            Kernel::Hurwitz { a } => (Some(a), None),
            Kernel::Lerch { a, z } => (Some(a), Some(z)),
        };
        if let Some(a) = a {
            if !a.re.is_positive() {
                return Err(Error::Domain("Re(a) must be positive".into()));
            }
        }
        if let Some(z) = z {
            if z.abs() > HPReal::one(z.digits()) {
                return Err(Error::Domain("|z| must not exceed 1".into()));
            }
        }
        if !self.b.is_zero() {
            return Ok(());
        }
        let lowest = self.sigma.to_f64() - (count as f64 - 1.0);
        let (needed, what) = match &self.kernel {
            Kernel::Plain => (0.0, "sigma > 0"),
            Kernel::Bose | Kernel::Hurwitz { .. } => (1.0, "sigma > 1"),
            Kernel::Lerch { z, .. } if is_one(z) => (1.0, "sigma > 1"),
            Kernel::Lerch { .. } => (0.0, "sigma > 0"),
        };
        let sigma_ok = if count == 1 {
            self.sigma > HPReal::from_f64(needed, self.sigma.digits())
        } else {
            lowest > needed
        };
        if !sigma_ok {
            return Err(Error::SingularEndpoint(format!(
                "b = 0 requires {what}, got sigma = {}",
                HPReal::from_f64(lowest, 17).to_decimal(12)
            )));
        }
        Ok(())
    }

    /// `ln |g(u)|` in `f64`, where `g(u) = e^{σu} K(e^u) e^{-b e^{-u}}`.
    fn log_mag(&self, sigma: f64, b: f64, u: f64) -> f64 {
        let t = u.exp();
        let mut lg = sigma * u;
        if b > 0.0 {
            lg -= b * (-u).exp();
        }
        match &self.kernel {
            Kernel::Plain => lg -= t,
            Kernel::Bose => lg -= ln_expm1(t, u),
            Kernel::Hurwitz { a } => lg += -a.re.to_f64() * t - ln_one_minus_exp_neg(t, u),
            Kernel::Lerch { a, z } => {
                lg -= a.re.to_f64() * t;
                if is_one(z) {
                    lg -= ln_one_minus_exp_neg(t, u);
                } else {
                    let w = (-t).exp();
                    let (zr, zi) = (z.re.to_f64(), z.im.to_f64());
                    lg -= (1.0 - zr * w).hypot(zi * w).ln();
                }
            }
        }
        if lg.is_nan() {
            f64::NEG_INFINITY
        } else {
            lg
        }
    }

    /// Finds `[u_lo, u_hi]` outside which every moment is negligible.
    fn window(&self, count: usize, ln_tol: f64) -> Result<(f64, f64)> {
        let sigma = self.sigma.to_f64();
        let b = self.b.to_f64();
        let lg = |u: f64, k: usize| self.log_mag(sigma - k as f64, b, u);
        let scan = |dir: f64| -> Result<f64> {
            let mut run_max = vec![f64::NEG_INFINITY; count];
            let mut prev: Vec<f64> = (0..count).map(|k| lg(0.0, k)).collect();
            for (k, p) in prev.iter().enumerate() {
                run_max[k] = *p;
            }
            let mut u = 0.0;
            loop {
                u += dir * SCAN_STEP;
                if u.abs() > SCAN_LIMIT || (dir > 0.0 && u > 700.0) {
                    return Err(Error::NonConvergent(format!(
                        "integrand still significant at u = {u}; window cannot be closed"
                    )));
                }
                let mut done = true;
                for k in 0..count {
                    let cur = lg(u, k);
                    run_max[k] = run_max[k].max(cur);
                    if cur == f64::NEG_INFINITY {
                        prev[k] = cur;
                        continue;
                    }
                    let rate = (prev[k] - cur) / SCAN_STEP;
                    let thresh = run_max[k].max(0.0) + ln_tol - TAIL_MARGIN;
                    let tail = if rate > 0.0 { cur + (-rate.min(1.0).ln()) } else { f64::INFINITY };
                    if tail >= thresh {
                        done = false;
                    }
                    prev[k] = cur;
                }
                if done {
                    return Ok(u);
                }
            }
        };
        let hi = scan(1.0)?;
        let lo = scan(-1.0)?;
        Ok((lo, hi))
    }

    /// `g(u)·t^{-k}` for `k = 0..count`, with `e^{iτu}` folded in.
    fn eval_node(&self, u: &HPReal, tau: &HPReal, count: usize) -> Vec<HPComplex> {
        let d = u.digits();
        let t = u.exp();
        let mut ex_re = &self.sigma.with_digits(d) * u;
        if !self.b.is_zero() {
            ex_re = &ex_re - &(&self.b.with_digits(d) / &t);
        }
        let ex_im = tau * u;
        let g = match &self.kernel {
            Kernel::Plain => {
                ex_re = &ex_re - &t;
                HPComplex::new(ex_re, ex_im).exp()
            }
            Kernel::Bose => HPComplex::new(ex_re, ex_im).exp().scale(&t.expm1().recip()),
            Kernel::Hurwitz { a } => {
                let ex = &HPComplex::new(ex_re, ex_im) - &a.with_digits(d).scale(&t);
                let den = -(-&t).expm1();
                ex.exp().scale(&den.recip())
            }
            Kernel::Lerch { a, z } => {
                let ex = &HPComplex::new(ex_re, ex_im) - &a.with_digits(d).scale(&t);
                let num = ex.exp();
                if is_one(z) {
                    num.scale(&(-(-&t).expm1()).recip())
                } else {
                    let den = &HPComplex::one(d) - &z.with_digits(d).scale(&(-&t).exp());
                    &num / &den
                }
            }
        };
        let mut out = Vec::with_capacity(count);
        out.push(g);
        if count > 1 {
            let r = (-u).exp();
            for k in 1..count {
                let next = out[k - 1].scale(&r);
                out.push(next);
            }
        }
        out
    }
}

fn node_u(j: i64, level: u32, h0: &HPReal) -> HPReal {
    let d = h0.digits();
    &(h0 * &HPReal::from_i64(j, d)) / &HPReal::from_i64(1i64 << level, d)
}

/// Integrates moments `k = 0..count` of `∫₀^∞ t^{σ-k-1} K(t) e^{-b/t} t^{iτ} dt`
/// on one shared mesh.
///
/// All moments must agree between consecutive levels within
/// `tol·max(1, |I_k|)`; each result carries its own error estimate.
pub fn integrate_halfline_moments(
    f: &HalfLineIntegrand,
    s_imag: &HPReal,
    count: usize,
    tol: &HPReal,
) -> Result<Vec<QuadratureResult>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    f.validate(count)?;
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let tau_f = s_imag.to_f64();
    if tau_f.abs() > MAX_TAU {
        return Err(Error::Domain(format!("|tau| must not exceed {MAX_TAU}")));
    }
    let digits = f.digits().max(tol.digits()).max(s_imag.digits());
    if tol < &HPReal::pow10(-(digits as i64 - 2), digits) {
        // successive levels cannot agree more closely than the arithmetic resolves
        return Err(Error::NonConvergent(format!(
            "tolerance {} cannot be certified at {digits} digits",
            tol.to_decimal(3)
        )));
    }
    let wd = digits + GUARD_DIGITS;
    let ln_tol = tol.to_f64().ln();
    let (lo, hi) = f.window(count, ln_tol)?;

    let h0_f = std::f64::consts::PI / (8.0 * tau_f.abs().max(1.0));
    let h0 = &(&HPReal::pi(wd) / &HPReal::from_f64(8.0, wd)) / &HPReal::from_f64(tau_f.abs().max(1.0), wd);
    let j0 = (lo / h0_f).floor() as i64;
    let j1 = (hi / h0_f).ceil() as i64;
    let tau = s_imag.with_digits(wd);

    let fw = HalfLineIntegrand {
        sigma: f.sigma.with_digits(wd),
        b: f.b.with_digits(wd),
        kernel: f.kernel.clone(),
    };

    let mut raw: Vec<CompensatedComplexSum> = (0..count).map(|_| CompensatedComplexSum::new(wd)).collect();
    let mut prev: Option<Vec<HPComplex>> = None;
    let mut evaluations = 0usize;

    for level in 0..=MAX_LEVEL {
        let scale = 1i64 << level;
        let (a, b) = (j0 * scale, j1 * scale);
        let step = if level == 0 { 1 } else { 2 };
        let start = if level == 0 { a } else { a + 1 };
        let js: Vec<i64> = (0..).map(|i| start + i * step).take_while(|j| *j <= b).collect();
        evaluations += js.len();
        if evaluations > MAX_NODES {
            return Err(Error::NonConvergent(format!("node budget of {MAX_NODES} exhausted")));
        }
        let vals: Vec<Vec<HPComplex>> = js
            .par_iter()
            .map(|&j| fw.eval_node(&node_u(j, level, &h0), &tau, count))
            .collect();
        for v in &vals {
            for (k, x) in v.iter().enumerate() {
                raw[k].push(x);
            }
        }
        let h = &h0 / &HPReal::from_i64(scale, wd);
        let cur: Vec<HPComplex> = raw.iter().map(|r| r.value().scale(&h)).collect();
        if let Some(p) = &prev {
            let diffs: Vec<HPReal> = cur.iter().zip(p).map(|(c, q)| (c - q).abs()).collect();
            let ok = cur
                .iter()
                .zip(&diffs)
                .all(|(c, dlt)| dlt <= &(tol * &c.abs().max(&HPReal::one(wd))));
            if ok {
                return Ok(cur
                    .into_iter()
                    .zip(diffs)
                    .map(|(v, e)| QuadratureResult {
                        value: v.with_digits(digits),
                        abs_error_estimate: e.with_digits(digits),
                        evaluations,
                        level,
                    })
                    .collect());
            }
        }
        prev = Some(cur);
    }
    Err(Error::NonConvergent(format!("mesh levels exhausted after {evaluations} evaluations")))
}

/// `∫₀^∞ t^{σ+iτ-1} K(t) e^{-b/t} dt`.
pub fn integrate_halfline(f: &HalfLineIntegrand, s_imag: &HPReal, tol: &HPReal) -> Result<QuadratureResult> {
    let mut v = integrate_halfline_moments(f, s_imag, 1, tol)?;
    Ok(v.remove(0))
}

/// Extended gamma `Γ_b(s) = ∫₀^∞ t^{s-1} e^{-t-b/t} dt` at the default tolerance.
pub fn gamma_b(s: &HPComplex, b: &HPReal) -> Result<QuadratureResult> {
    let d = s.digits().max(b.digits());
    gamma_b_tol(s, b, &default_tolerance(d))
}

pub fn gamma_b_tol(s: &HPComplex, b: &HPReal, tol: &HPReal) -> Result<QuadratureResult> {
    let f = HalfLineIntegrand::new(s.re.clone(), b.clone(), Kernel::Plain);
    integrate_halfline(&f, &s.im, tol)
}

/// Kernel and regulator behind a family's integral form.
pub fn family_integrand(family: Family, sigma: &HPReal, params: &FamilyParams) -> HalfLineIntegrand {
    let d = sigma.digits();
    let b = if family.is_extended() { params.b.clone() } else { HPReal::zero(d) };
    let kernel = match family.base() {
        Family::Gamma => Kernel::Plain,
        Family::Rzf => Kernel::Bose,
        Family::Hzf => Kernel::Hurwitz { a: params.a.clone() },
        _ => Kernel::Lerch { a: params.a.clone(), z: params.z.clone() },
    };
    HalfLineIntegrand::new(sigma.clone(), b, kernel)
}

/// Real-line Fourier integral `∫_ℝ e^{iτx} f_σ(x) dx` of a family's FTR
/// profile `f_σ(x) = e^{σx} K(e^x) e^{-b e^{-x}}`.
///
/// For the zeta members this equals `Γ(s)` times the function value at
/// `s = σ + iτ`; for the gamma members it is `Γ_b(s)` itself.
pub fn ftr_check(
    family: Family,
    sigma: &HPReal,
    tau: &HPReal,
    params: &FamilyParams,
    tol: &HPReal,
) -> Result<QuadratureResult> {
    let f = family_integrand(family, sigma, params);
    integrate_halfline(&f, tau, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 64;

    fn r(x: f64) -> HPReal {
        HPReal::from_f64(x, D)
    }

    fn tol() -> HPReal {
        default_tolerance(D)
    }

    fn rel(a: &HPReal, b: &HPReal) -> f64 {
        (&(a - b).abs() / &b.abs()).to_f64()
    }

    #[test]
    fn gamma_two_is_one() {
        let q = gamma_b(&HPComplex::from_f64(2.0, 0.0, D), &r(0.0)).unwrap();
        assert!(rel(&q.value.re, &r(1.0)) < 1e-30, "{}", q.value);
        assert!(q.evaluations > 0);
        assert!(!q.abs_error_estimate.is_negative());
    }

    #[test]
    fn bose_kernel_gives_zeta_two() {
        let f = HalfLineIntegrand::new(r(2.0), r(0.0), Kernel::Bose);
        let q = integrate_halfline(&f, &r(0.0), &tol()).unwrap();
        let pi = HPReal::pi(D);
        let expect = &(&pi * &pi) / &r(6.0);
        assert!(rel(&q.value.re, &expect) < 1e-30);
    }

    #[test]
    fn extended_gamma_half() {
        for b in [0.25, 1.0, 4.0] {
            let q = gamma_b(&HPComplex::from_f64(0.5, 0.0, D), &r(b)).unwrap();
            let expect = &HPReal::pi(D).sqrt() * &(-(&r(2.0) * &r(b).sqrt())).exp();
            assert!(rel(&q.value.re, &expect) < 1e-30, "b = {b}");
        }
    }

    #[test]
    fn reflection_in_s() {
        for b in [0.25, 1.0, 4.0] {
            for s in [0.5, 1.0, 1.5] {
                let plus = gamma_b(&HPComplex::from_f64(s, 0.0, D), &r(b)).unwrap().value.re;
                let minus = gamma_b(&HPComplex::from_f64(-s, 0.0, D), &r(b)).unwrap().value.re;
                let expect = &r(b).powf(&r(-s)) * &plus;
                assert!(rel(&minus, &expect) < 1e-25, "b = {b}, s = {s}");
            }
        }
    }

    #[test]
    fn small_b_is_continuous() {
        let q = gamma_b(&HPComplex::from_f64(2.0, 0.0, D), &r(1e-8)).unwrap();
        assert!((&q.value.re - &r(1.0)).abs().to_f64() < 1e-6);
    }

    #[test]
    fn regulated_bose_at_negative_sigma() {
        let f = HalfLineIntegrand::new(r(-3.0), r(1.0), Kernel::Bose);
        let q = integrate_halfline(&f, &r(0.0), &tol()).unwrap();
        assert!(q.value.re.is_finite() && q.value.re.is_positive());
        assert!(q.abs_error_estimate < tol());
    }

    #[test]
    fn singular_endpoints_are_rejected() {
        let bad = [
            HalfLineIntegrand::new(r(0.0), r(0.0), Kernel::Plain),
            HalfLineIntegrand::new(r(1.0), r(0.0), Kernel::Bose),
            HalfLineIntegrand::new(r(0.5), r(0.0), Kernel::Hurwitz { a: HPComplex::from_f64(0.5, 0.0, D) }),
        ];
        for f in &bad {
            assert!(matches!(integrate_halfline(f, &r(0.0), &tol()), Err(Error::SingularEndpoint(_))));
        }
        let f = HalfLineIntegrand::new(r(0.5), r(-1.0), Kernel::Plain);
        assert!(matches!(integrate_halfline(&f, &r(0.0), &tol()), Err(Error::Domain(_))));
        let f = HalfLineIntegrand::new(r(2.0), r(0.0), Kernel::Plain);
        assert!(matches!(integrate_halfline(&f, &r(17.0), &tol()), Err(Error::Domain(_))));
    }

    #[test]
    fn ftr_at_zero_tau_is_real() {
        let params = FamilyParams::new(D);
        for fam in [Family::Gamma, Family::Rzf, Family::Hzf] {
            let q = ftr_check(fam, &r(2.0), &r(0.0), &params, &tol()).unwrap();
            assert!(q.value.im.abs() <= HPReal::pow10(-(D as i64 - 10), D));
        }
        let rz = ftr_check(Family::Rzf, &r(2.0), &r(0.0), &params, &tol()).unwrap();
        let hz = ftr_check(Family::Hzf, &r(2.0), &r(0.0), &params, &tol()).unwrap();
        assert!(rel(&hz.value.re, &rz.value.re) < 1e-30);
    }

    #[test]
    fn moments_match_single_integrals() {
        let f = HalfLineIntegrand::new(r(0.0), r(1.0), Kernel::Bose);
        let all = integrate_halfline_moments(&f, &r(0.0), 6, &tol()).unwrap();
        for (k, m) in all.iter().enumerate() {
            let g = HalfLineIntegrand::new(r(-(k as f64)), r(1.0), Kernel::Bose);
            let one = integrate_halfline(&g, &r(0.0), &tol()).unwrap();
            assert!(rel(&m.value.re, &one.value.re) < 1e-28, "k = {k}");
        }
    }

    #[test]
    fn refinement_levels_are_consistent() {
        let f = HalfLineIntegrand::new(r(2.5), r(0.5), Kernel::Bose);
        let q = integrate_halfline(&f, &r(1.0), &tol()).unwrap();
        assert!(q.level >= 1);
        assert!(q.abs_error_estimate <= &tol() * &q.value.abs().max(&r(1.0)));
    }
}
