//! Delta combs: the family members written as weighted sums of
//! `δ(τ - ι(σ + k))`, and their pairing with `Γ(s)φ(s)`.
//!
//! Every comb has the same skeleton, outermost first:
//!
//! * an optional geometric index `n` with weight `z^n`,
//! * an optional dependent factorial index `m` with weight `(-n)^m/m!`,
//!   shifting the evaluation point by `+m`,
//! * independent factorial indices `j` with weight `x^j/j!`, each shifting
//!   the evaluation point by `+j` or `-j`.
//!
//! Pairing with `Γ(s)φ(s)` collapses each delta to `φ(-k)` where `k` is the
//! sum of the factorial shifts; the geometric index never moves `k`. The sum
//! over `m` at fixed `n` must be done first: summed the other way the inner
//! series `Σ_n n^m` diverges.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, LambdaConvention};
use crate::family::{Family, FamilyParams};
use crate::numerics::{
    CompensatedComplexSum, CompensatedSum, HPComplex, HPReal, SeriesResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    Factorial,
    Geometric,
    PowerSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexDescriptor {
    pub name: String,
    pub lower: u8,
    pub decay: DecayClass,
}

/// Independent factorial index `x^j/j!` moving the evaluation point by `shift·j`.
#[derive(Clone, Debug)]
pub struct FactorialIndex {
    pub name: &'static str,
    pub x: HPComplex,
    pub shift: i64,
}

/// How the delta's argument is printed. The scaled form `δ(ιτ + (σ+k))`
/// equals `δ(ι(τ - ι(σ+k)))`, i.e. the shifted form rescaled by `1/|ι| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaForm {
    Shifted,
    Scaled,
}

#[derive(Clone, Debug)]
pub struct DeltaComb {
    pub family: Family,
    pub params: FamilyParams,
    /// Outer → inner.
    pub plan: Vec<IndexDescriptor>,
    geometric: Option<(&'static str, HPComplex)>,
    dependent: Option<&'static str>,
    independent: Vec<FactorialIndex>,
}

/// The `2π` carried in front of every comb.
pub fn two_pi(digits: u32) -> HPReal {
    &HPReal::pi(digits) * &HPReal::from_i64(2, digits)
}

fn neg(x: &HPComplex) -> HPComplex {
    -x
}

/// Builds the comb of a family member.
pub fn build_dr(family: Family, params: &FamilyParams) -> Result<DeltaComb> {
    let d = params.digits();
    if params.b.is_negative() {
        return Err(Error::Domain("b must be non-negative".into()));
    }
    if family.uses_a() && !params.a.re.is_positive() {
        return Err(Error::Domain("Re(a) must be positive".into()));
    }
    if family.uses_z() && params.z.abs() > HPReal::one(d) {
        return Err(Error::Domain("|z| must not exceed 1".into()));
    }
    let one = HPComplex::one(d);
    let minus_one = neg(&one);
    let b_index = |name| FactorialIndex { name, x: neg(&HPComplex::from_real(params.b.clone())), shift: -1 };
    let (geometric, dependent, independent) = match family {
        Family::Gamma => (None, None, vec![FactorialIndex { name: "n", x: minus_one, shift: 1 }]),
        Family::Egamma => (
            None,
            None,
            vec![b_index("n"), FactorialIndex { name: "m", x: minus_one, shift: 1 }],
        ),
        Family::Rzf => (Some(("n", one.clone())), Some("m"), vec![FactorialIndex { name: "l", x: minus_one, shift: 1 }]),
        Family::Erzf => (
            Some(("n", one.clone())),
            Some("m"),
            vec![FactorialIndex { name: "k", x: minus_one, shift: 1 }, b_index("l")],
        ),
        Family::Hzf => (
            Some(("n", one.clone())),
            Some("k"),
            vec![FactorialIndex { name: "m", x: neg(&params.a), shift: 1 }],
        ),
        Family::Ehzf => (
            Some(("n", one.clone())),
            Some("k"),
            vec![FactorialIndex { name: "m", x: neg(&params.a), shift: 1 }, b_index("l")],
        ),
        Family::Hlzf => (
            Some(("m", params.z.clone())),
            Some("k"),
            vec![FactorialIndex { name: "n", x: neg(&params.a), shift: 1 }],
        ),
        Family::Ehlzf => (
            Some(("n", params.z.clone())),
            Some("k"),
            vec![FactorialIndex { name: "m", x: neg(&params.a), shift: 1 }, b_index("l")],
        ),
    };
    let mut plan = Vec::new();
    if let Some((name, _)) = &geometric {
        plan.push(IndexDescriptor { name: (*name).into(), lower: 0, decay: DecayClass::Geometric });
    }
    if let Some(name) = dependent {
        plan.push(IndexDescriptor { name: name.into(), lower: 0, decay: DecayClass::Factorial });
    }
    for ix in &independent {
        plan.push(IndexDescriptor { name: ix.name.into(), lower: 0, decay: DecayClass::Factorial });
    }
    Ok(DeltaComb { family, params: params.clone(), plan, geometric, dependent, independent })
}

fn factorial(n: usize, d: u32) -> HPReal {
    (1..=n).fold(HPReal::one(d), |acc, i| &acc * &HPReal::from_u64(i as u64, d))
}

impl DeltaComb {
    pub fn digits(&self) -> u32 {
        self.params.digits()
    }

    pub fn index_names(&self) -> Vec<&str> {
        self.plan.iter().map(|p| p.name.as_str()).collect()
    }

    /// Weight and evaluation point `k` (the delta sits at `τ = ι(σ + k)`) of
    /// one multi-index given in plan order.
    pub fn coeff(&self, idx: &[usize]) -> Result<(HPComplex, i64)> {
        if idx.len() != self.plan.len() {
            return Err(Error::Domain(format!(
                "{} comb takes {} indices, got {}",
                self.family,
                self.plan.len(),
                idx.len()
            )));
        }
        let d = self.digits();
        let mut w = HPComplex::one(d);
        let mut k = 0i64;
        let mut pos = 0;
        let mut n_val = 0usize;
        if let Some((_, z)) = &self.geometric {
            n_val = idx[0];
            w = &w * &z.powi(n_val as i64);
            pos += 1;
        }
        if self.dependent.is_some() {
            let m = idx[pos];
            let base = HPReal::from_i64(-(n_val as i64), d);
            let t = if m == 0 { HPReal::one(d) } else { base.powi(m as i64) };
            w = w.scale(&(&t / &factorial(m, d)));
            k += m as i64;
            pos += 1;
        }
        for ix in &self.independent {
            let j = idx[pos];
            w = &w * &ix.x.powi(j as i64);
            w = w.scale(&factorial(j, d).recip());
            k += ix.shift * j as i64;
            pos += 1;
        }
        Ok((w, k))
    }

    /// Coefficient as printed in the given delta form.
    pub fn coeff_in_form(&self, idx: &[usize], form: DeltaForm) -> Result<(HPComplex, i64)> {
        let (w, k) = self.coeff(idx)?;
        let alpha = match form {
            DeltaForm::Shifted => HPComplex::one(w.digits()),
            DeltaForm::Scaled => HPComplex::i(w.digits()),
        };
        Ok((w.scale(&alpha.abs().recip()), k))
    }

    /// All terms with every index in `0..=cap`, in lexicographic plan order.
    pub fn terms(&self, cap: usize) -> Result<Vec<CombTerm>> {
        let names = self.index_names();
        let dims = names.len();
        let total = (cap + 1).checked_pow(dims as u32).unwrap_or(usize::MAX);
        if total > 2_000_000 {
            return Err(Error::Resource(format!("comb dump of {total} terms exceeds the limit")));
        }
        let d = self.digits();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; dims];
        loop {
            let (w, k) = self.coeff(&idx)?;
            out.push(CombTerm {
                indices: names.iter().zip(&idx).map(|(n, v)| ((*n).to_string(), *v)).collect(),
                weight: w.to_decimal(d),
                eval_point: k,
            });
            let mut p = dims;
            loop {
                if p == 0 {
                    return Ok(out);
                }
                p -= 1;
                if idx[p] < cap {
                    idx[p] += 1;
                    for q in idx.iter_mut().skip(p + 1) {
                        *q = 0;
                    }
                    break;
                }
            }
        }
    }

    /// JSON dump: array of `{indices, weight, eval_point}`.
    pub fn dump_json(&self, cap: usize) -> Result<String> {
        let terms = self.terms(cap)?;
        serde_json::to_string_pretty(&terms).map_err(|e| Error::Resource(e.to_string()))
    }
}

/// One dumped comb term; the weight is a full-precision decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombTerm {
    pub indices: BTreeMap<String, usize>,
    pub weight: String,
    pub eval_point: i64,
}

/// Test function `φ` paired against the comb.
#[derive(Clone, Debug)]
pub enum TestFn {
    One,
    /// `1 - 2^{1-s}`
    EtaFactor,
    /// `2(1 - 2^{1-s})`
    LambdaPaper,
    /// `1 - 2^{-s}`
    LambdaStandard,
    /// `c^{-s}`, so `φ(-k) = c^k`
    ExpScale(BigRational),
    /// `φ(0), φ(-1), φ(-2), ...`
    Tabulated(Vec<HPReal>),
}

impl TestFn {
    pub fn lambda(convention: LambdaConvention) -> Self {
        match convention {
            LambdaConvention::Paper => TestFn::LambdaPaper,
            LambdaConvention::Standard => TestFn::LambdaStandard,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TestFn::One => "one".into(),
            TestFn::EtaFactor => "eta".into(),
            TestFn::LambdaPaper => "lambda-paper".into(),
            TestFn::LambdaStandard => "lambda-standard".into(),
            TestFn::ExpScale(c) => format!("exp-scale:{c}"),
            TestFn::Tabulated(v) => format!("tabulated[{}]", v.len()),
        }
    }

    /// `φ = Σ α c^{-s}` as `(α, c)` pairs, when such a form exists.
    pub fn exponentials(&self) -> Option<Vec<(i64, BigRational)>> {
        let c = |n: i64| BigRational::from_integer(n.into());
        match self {
            TestFn::One => Some(vec![(1, c(1))]),
            TestFn::EtaFactor => Some(vec![(1, c(1)), (-2, c(2))]),
            TestFn::LambdaPaper => Some(vec![(2, c(1)), (-4, c(2))]),
            TestFn::LambdaStandard => Some(vec![(1, c(1)), (-1, c(2))]),
            TestFn::ExpScale(r) => Some(vec![(1, r.clone())]),
            TestFn::Tabulated(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let TestFn::ExpScale(c) = self {
            if !c.is_positive() {
                return Err(Error::Domain("exp-scale needs c > 0".into()));
            }
        }
        Ok(())
    }

    /// `φ(-k)`; tabulated functions only cover `k ≥ 0`.
    pub fn at_neg(&self, k: i64, digits: u32) -> Result<HPReal> {
        match self {
            TestFn::Tabulated(v) => {
                if k < 0 {
                    return Err(Error::Domain(format!("tabulated test function has no value at s = {}", -k)));
                }
                v.get(k as usize).map(|x| x.with_digits(digits)).ok_or_else(|| {
                    Error::Domain(format!("tabulated test function covers s >= -{}, needed s = -{k}", v.len() - 1))
                })
            }
            _ => {
                let mut acc = CompensatedSum::new(digits);
                for (alpha, c) in self.exponentials().expect("closed form") {
                    let cv = HPReal::from_ratio(&c, digits);
                    acc.push(&(&HPReal::from_i64(alpha, digits) * &cv.powi(k)));
                }
                Ok(acc.value())
            }
        }
    }

    /// Growth rate `c` with `|φ(-k)| ≲ c^k`, at least 1.
    fn growth(&self, digits: u32) -> f64 {
        match self.exponentials() {
            Some(ex) => ex
                .iter()
                .map(|(_, c)| HPReal::from_ratio(c, digits).to_f64())
                .fold(1.0, f64::max),
            None => {
                let TestFn::Tabulated(v) = self else { unreachable!() };
                v.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, x)| x.abs().to_f64().powf(1.0 / k as f64))
                    .filter(|g| g.is_finite())
                    .fold(1.0, f64::max)
            }
        }
    }
}

/// Caps for the pairing sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Last geometric index included.
    pub geometric: usize,
    /// Last value of each independent factorial index; also the minimum for
    /// the dependent index, which is extended per `n` until its terms vanish.
    pub factorial: usize,
    /// Largest acceptable tail bound.
    pub tolerance: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { geometric: 60, factorial: 60, tolerance: 1e-24 }
    }
}

#[derive(Clone, Debug)]
pub struct InnerProductResult {
    /// The pairing with the leading `2π` removed.
    pub value: HPComplex,
    pub value_with_2pi: HPComplex,
    /// Index name → last index value used.
    pub truncations: Vec<(String, usize)>,
    pub tail_bound: HPReal,
    pub n_start: u8,
}

/// Distribution of the independent indices over the total shift:
/// `D(k) = Σ_{Σ shift·j = k} Π x^j/j!`, keyed from `offset`.
fn shift_distribution(ind: &[FactorialIndex], cap: usize, d: u32) -> (Vec<HPComplex>, i64) {
    let mut dist = vec![HPComplex::one(d)];
    let mut offset = 0i64;
    for ix in ind {
        let mut w = Vec::with_capacity(cap + 1);
        let mut t = HPComplex::one(d);
        for j in 0..=cap {
            if j > 0 {
                t = (&t * &ix.x).scale(&HPReal::from_u64(j as u64, d).recip());
            }
            w.push(t.clone());
        }
        let span = cap as i64 * ix.shift;
        let new_offset = offset + span.min(0);
        let new_len = dist.len() + cap;
        let mut next: Vec<CompensatedComplexSum> = (0..new_len).map(|_| CompensatedComplexSum::new(d)).collect();
        for (i, a) in dist.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                let k = offset + i as i64 + ix.shift * j as i64;
                next[(k - new_offset) as usize].push(&(a * wj));
            }
        }
        dist = next.iter().map(|s| s.value()).collect();
        offset = new_offset;
    }
    (dist, offset)
}

/// `|x|^{J+1}/(J+1)!` over `1 - |x|/(J+2)`: tail of `Σ x^j/j!` after `J`.
fn factorial_tail(x: f64, cap: usize) -> f64 {
    let mut t = 1.0f64;
    for j in 1..=cap + 1 {
        t *= x / j as f64;
    }
    let r = x / (cap as f64 + 2.0);
    if r >= 1.0 {
        f64::INFINITY
    } else {
        t / (1.0 - r)
    }
}

/// Pairs the comb with `Γ(s)φ(s)` (the `2π` is reported separately).
///
/// Summation order is fixed: for each geometric index `n ≥ n_start` the
/// factorial indices are summed completely, then the `n` terms are added.
pub fn inner_product(comb: &DeltaComb, phi: &TestFn, trunc: &Truncation, n_start: u8) -> Result<InnerProductResult> {
    phi.validate()?;
    if n_start > 1 {
        return Err(Error::Domain("n_start must be 0 or 1".into()));
    }
    if trunc.factorial < 8 {
        return Err(Error::Domain("factorial caps must be at least 8".into()));
    }
    if comb.geometric.is_some() && trunc.geometric < 40 {
        return Err(Error::Domain("the geometric cap must be at least 40".into()));
    }
    if trunc.tolerance.is_nan() || trunc.tolerance <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let d = comb.digits();
    let growth = phi.growth(d);
    let n_max = if comb.geometric.is_some() { trunc.geometric } else { 0 };
    // the dependent sum Σ (-n c)^m/m! peaks near e^{nc} and returns ~e^{-nc}
    let boost = if comb.dependent.is_some() {
        (n_max as f64 * growth * std::f64::consts::LOG10_E).ceil() as u32
    } else {
        0
    };
    let wd = d + 10 + boost;
    let fcap = trunc.factorial;

    let ind: Vec<FactorialIndex> = comb
        .independent
        .iter()
        .map(|ix| FactorialIndex { name: ix.name, x: ix.x.with_digits(wd), shift: ix.shift })
        .collect();
    let (dist, offset) = shift_distribution(&ind, fcap, wd);

    // Ψ(m) = Σ_k D(k) φ(-(k+m)), grown on demand
    let mut psi: Vec<HPComplex> = Vec::new();
    let psi_at = |m: usize, psi: &mut Vec<HPComplex>| -> Result<HPComplex> {
        while psi.len() <= m {
            let mm = psi.len() as i64;
            let mut acc = CompensatedComplexSum::new(wd);
            for (i, dk) in dist.iter().enumerate() {
                if dk.is_zero() {
                    continue;
                }
                let k = offset + i as i64 + mm;
                acc.push(&dk.scale(&phi.at_neg(k, wd)?));
            }
            psi.push(acc.value());
        }
        Ok(psi[m].clone())
    };

    let mut total = CompensatedComplexSum::new(wd);
    let mut dep_used = 0usize;
    let mut last_terms: Vec<f64> = Vec::new();
    let eps = HPReal::pow10(-(wd as i64), wd);

    match &comb.geometric {
        None => {
            total.push(&psi_at(0, &mut psi)?);
        }
        Some((_, z)) => {
            let z = z.with_digits(wd);
            for n in (n_start as usize)..=n_max {
                let zn = z.powi(n as i64);
                let inner = if n == 0 {
                    psi_at(0, &mut psi)?
                } else {
                    let x = HPReal::from_i64(-(n as i64), wd);
                    let need = (n as f64 * growth * std::f64::consts::E).ceil() as usize + 10;
                    let mut acc = CompensatedComplexSum::new(wd);
                    let mut w = HPReal::one(wd);
                    let mut small = 0;
                    let mut m = 0usize;
                    loop {
                        if m > 0 {
                            w = &(&w * &x) / &HPReal::from_u64(m as u64, wd);
                        }
                        let t = psi_at(m, &mut psi)?.scale(&w);
                        let tiny = t.abs() <= eps;
                        acc.push(&t);
                        small = if tiny { small + 1 } else { 0 };
                        if m >= fcap.max(need) && small >= 3 {
                            break;
                        }
                        m += 1;
                        if m > 50_000 {
                            return Err(Error::NotConverged(format!("dependent index at n = {n} did not settle")));
                        }
                    }
                    dep_used = dep_used.max(m);
                    acc.value()
                };
                let term = &zn * &inner;
                last_terms.push(term.abs().to_f64());
                total.push(&term);
            }
        }
    }

    // tail: truncated geometric index plus truncated independent indices
    let tail = match phi.exponentials() {
        Some(ex) => {
            let mut t = 0.0f64;
            for (alpha, c) in &ex {
                let cf = HPReal::from_ratio(c, d).to_f64();
                let mut ind_scale = 0.0f64; // ln |Π_i exp(x_i c^{shift_i})|
                let mut ind_tail = 0.0f64;
                for ix in &comb.independent {
                    let xc = ix.x.abs().to_f64() * cf.powi(ix.shift as i32);
                    ind_scale += ix.x.re.to_f64() * cf.powi(ix.shift as i32);
                    ind_tail += factorial_tail(xc, fcap);
                }
                let scale = ind_scale.exp();
                if let Some((_, z)) = &comb.geometric {
                    let rho = z.abs().to_f64() * (-cf).exp();
                    if rho >= 1.0 {
                        t = f64::INFINITY;
                        continue;
                    }
                    let geo = rho.powi(n_max as i32 + 1) / (1.0 - rho);
                    let all_n = 1.0 / (1.0 - rho);
                    t += alpha.unsigned_abs() as f64 * (scale * geo + ind_tail * all_n * (1.0 + scale));
                } else {
                    t += alpha.unsigned_abs() as f64 * ind_tail * (1.0 + scale);
                }
            }
            t
        }
        None => {
            // no closed form: extrapolate the last n terms geometrically
            let k = last_terms.len();
            if k >= 2 && last_terms[k - 2] > 0.0 {
                let r = (last_terms[k - 1] / last_terms[k - 2]).min(0.999);
                last_terms[k - 1] * r / (1.0 - r)
            } else {
                0.0
            }
        }
    };

    let value = total.value().with_digits(d);
    let tail_bound = HPReal::from_f64(tail.max(0.0), d);
    if tail.is_nan() || tail > trunc.tolerance {
        return Err(Error::NotConverged(format!(
            "{} pairing with {}: tail bound {:.3e} exceeds {:.3e} (partial value {})",
            comb.family,
            phi.name(),
            tail,
            trunc.tolerance,
            value.to_decimal(20)
        )));
    }
    let mut truncations = Vec::new();
    if let Some((name, _)) = &comb.geometric {
        truncations.push(((*name).to_string(), n_max));
    }
    if let Some(name) = comb.dependent {
        truncations.push((name.to_string(), dep_used));
    }
    for ix in &comb.independent {
        truncations.push((ix.name.to_string(), fcap));
    }
    let value_with_2pi = value.scale(&two_pi(d));
    Ok(InnerProductResult { value, value_with_2pi, truncations, tail_bound, n_start })
}

/// The reversed pairing `⟨Γ(s), g(s)⟩ / 2π = Σ_{m≤N} (-1)^m g(-m)/m!` in
/// floating point. The tail estimate is twice the largest of the next four
/// terms, which tolerates the vanishing odd or even terms of zeta-like `g`.
pub fn gamma_dr_pairing<F>(g: F, trunc: usize, tol: &HPReal) -> Result<SeriesResult<HPReal>>
where
    F: Fn(usize) -> Result<HPReal>,
{
    let d = tol.digits();
    let wd = d + 10;
    let mut acc = CompensatedSum::new(wd);
    let mut w = HPReal::one(wd);
    let mut tail = HPReal::zero(wd);
    for m in 0..=trunc + 4 {
        if m > 0 {
            w = &(-&w) / &HPReal::from_u64(m as u64, wd);
        }
        let t = &w * &g(m)?.with_digits(wd);
        if m <= trunc {
            acc.push(&t);
        } else {
            tail = tail.max(&t.abs());
        }
    }
    let tail = &tail * &HPReal::from_i64(2, wd);
    let converged = &tail <= tol;
    Ok(SeriesResult { value: acc.value().with_digits(d), terms_used: trunc + 1, tail_estimate: tail.with_digits(d), converged })
}

/// [`gamma_dr_pairing`] with exact rational partial sums, converted once.
pub fn gamma_dr_pairing_exact<F>(g: F, trunc: usize, tol: &HPReal) -> Result<SeriesResult<HPReal>>
where
    F: Fn(usize) -> Result<BigRational>,
{
    let d = tol.digits();
    let sum = exact::alternating_factorial_sum(trunc, &g)?;
    let mut tail = BigRational::from_integer(0.into());
    let mut fact = (1..=trunc).fold(num_bigint::BigInt::from(1), |a, i| a * num_bigint::BigInt::from(i));
    for m in trunc + 1..=trunc + 4 {
        fact *= num_bigint::BigInt::from(m);
        let t = (g(m)? / BigRational::from_integer(fact.clone())).abs();
        if t > tail {
            tail = t;
        }
    }
    let tail = HPReal::from_ratio(&(tail * BigRational::from_integer(2.into())), d);
    let converged = &tail <= tol;
    Ok(SeriesResult { value: HPReal::from_ratio(&sum, d), terms_used: trunc + 1, tail_estimate: tail, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 64;

    fn params() -> FamilyParams {
        FamilyParams::new(D)
    }

    fn e() -> HPReal {
        HPReal::e(D)
    }

    fn close(a: &HPComplex, b: &HPReal, tol: f64) -> bool {
        (&a.re - b).abs().to_f64() < tol && a.im.abs().to_f64() < tol
    }

    #[test]
    fn gamma_comb_coefficients() {
        let c = build_dr(Family::Gamma, &params()).unwrap();
        let (w, k) = c.coeff(&[3]).unwrap();
        assert!(close(&w, &HPReal::from_ratio(&exact::ratio(-1, 6), D), 1e-60));
        assert_eq!(k, 3);
        let terms = c.terms(4).unwrap();
        let weights: Vec<&str> = terms.iter().map(|t| t.weight.as_str()).collect();
        assert_eq!(weights[0], "1");
        assert_eq!(weights[1], "-1");
        assert_eq!(weights[2], "0.5");
    }

    #[test]
    fn rzf_comb_coefficients() {
        let c = build_dr(Family::Rzf, &params()).unwrap();
        assert_eq!(c.index_names(), vec!["n", "m", "l"]);
        let (w, k) = c.coeff(&[2, 1, 0]).unwrap();
        assert!(close(&w, &HPReal::from_i64(-2, D), 1e-60));
        assert_eq!(k, 1);
        for idx in [[0, 0, 0], [3, 2, 1], [5, 4, 7]] {
            let a = c.coeff_in_form(&idx, DeltaForm::Shifted).unwrap();
            let b = c.coeff_in_form(&idx, DeltaForm::Scaled).unwrap();
            assert_eq!(a.0.to_decimal(D), b.0.to_decimal(D));
            assert_eq!(a.1, b.1);
        }
    }

    #[test]
    fn egamma_reduces_at_zero_b() {
        let eg = build_dr(Family::Egamma, &params()).unwrap();
        let g = build_dr(Family::Gamma, &params()).unwrap();
        for n in 0..6 {
            for m in 0..6 {
                let (w, _) = eg.coeff(&[n, m]).unwrap();
                if n > 0 {
                    assert!(w.is_zero());
                } else {
                    let (wg, _) = g.coeff(&[m]).unwrap();
                    assert_eq!(w.to_decimal(D), wg.to_decimal(D));
                }
            }
        }
    }

    #[test]
    fn closed_forms() {
        let t = Truncation::default();
        let rzf = build_dr(Family::Rzf, &params()).unwrap();
        let v = inner_product(&rzf, &TestFn::One, &t, 0).unwrap();
        let one = HPReal::one(D);
        assert!(close(&v.value, &(&e() - &one).recip(), 1e-25));
        assert_eq!(v.value_with_2pi.re.to_decimal(40), (&v.value.re * &two_pi(D)).to_decimal(40));
        let g = inner_product(&build_dr(Family::Gamma, &params()).unwrap(), &TestFn::One, &t, 0).unwrap();
        assert!(close(&g.value, &e().recip(), 1e-25));
        let eta = inner_product(&rzf, &TestFn::EtaFactor, &t, 0).unwrap();
        assert!(close(&eta.value, &(&e() + &one).recip(), 1e-25));
        let p = params().with_b(HPReal::one(D));
        let erzf = inner_product(&build_dr(Family::Erzf, &p).unwrap(), &TestFn::One, &t, 0).unwrap();
        assert!(close(&erzf.value, &(&e().recip() / &(&e() - &one)), 1e-25));
    }

    #[test]
    fn exp_scale_factorization() {
        let t = Truncation::default();
        let rzf = build_dr(Family::Rzf, &params()).unwrap();
        for c in [1i64, 2] {
            for n_start in [0u8, 1] {
                let phi = TestFn::ExpScale(exact::ratio(c, 1));
                let v = inner_product(&rzf, &phi, &t, n_start).unwrap();
                let ec = (-&HPReal::from_i64(c, D)).exp();
                let expect = &(&ec / &(&HPReal::one(D) - &ec)) * &ec.powi(n_start as i64);
                assert!(close(&v.value, &expect, 1e-25), "c = {c}, n_start = {n_start}");
            }
        }
    }

    #[test]
    fn tail_bounds_and_caps() {
        let rzf = build_dr(Family::Rzf, &params()).unwrap();
        let low = Truncation { geometric: 40, factorial: 20, tolerance: 1e-10 };
        let a = inner_product(&rzf, &TestFn::One, &low, 0).unwrap();
        let b = inner_product(&rzf, &TestFn::One, &Truncation::default(), 0).unwrap();
        let diff = (&a.value - &b.value).abs();
        assert!(diff <= &a.tail_bound + &HPReal::pow10(-50, D));
        let tight = Truncation { geometric: 40, factorial: 60, tolerance: 1e-30 };
        assert!(matches!(inner_product(&rzf, &TestFn::One, &tight, 0), Err(Error::NotConverged(_))));
        let bad = Truncation { geometric: 10, factorial: 60, tolerance: 1e-10 };
        assert!(matches!(inner_product(&rzf, &TestFn::One, &bad, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn reversed_pairing() {
        let tol = HPReal::pow10(-24, D);
        let z = gamma_dr_pairing_exact(exact::zeta_neg, 60, &tol).unwrap();
        assert!(z.converged);
        let expect = &(&e() - &HPReal::one(D)).recip() - &HPReal::one(D);
        assert!((&z.value - &expect).abs().to_f64() < 1e-40);
        let ex = gamma_dr_pairing(|m| Ok(e().powi(-(m as i64))), 60, &tol).unwrap();
        assert!((&ex.value - &(-&e().recip()).exp()).abs().to_f64() < 1e-40);
    }

    #[test]
    fn json_dump() {
        let c = build_dr(Family::Gamma, &params()).unwrap();
        let js = c.dump_json(4).unwrap();
        let back: Vec<CombTerm> = serde_json::from_str(&js).unwrap();
        assert_eq!(back.len(), 5);
        assert_eq!(back[3].eval_point, 3);
        assert_eq!(back, c.terms(4).unwrap());
    }
}
