//! Independent reference implementations used only by the tests. None of
//! them calls into the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Bernoulli numbers from `Σ_{k≤n} C(n+1, k) B_k = 0`, then `B_1 = +1/2`.
pub fn bernoulli_plus(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        if n == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        let mut c = BigInt::one(); // C(n+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(c.clone());
            c = c * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        // c is now C(n+1, n)
        b.push(-acc / BigRational::from_integer(c));
    }
    if max >= 1 {
        b[1] = BigRational::new(1.into(), 2.into());
    }
    b
}

/// `Σ_{m≤n} (-1)^m g(m)/m!` in exact rationals.
pub fn alt_factorial_sum(n: usize, g: impl Fn(usize) -> BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut fact = BigInt::one();
    for m in 0..=n {
        if m > 0 {
            fact *= BigInt::from(m);
        }
        let t = g(m) / BigRational::from_integer(fact.clone());
        if m % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `ζ(-m) = -B⁺_{m+1}/(m+1)`; `b` from [`bernoulli_plus`].
pub fn zeta_neg(b: &[BigRational], m: usize) -> BigRational {
    -(&b[m + 1] / BigRational::from_integer(BigInt::from(m + 1)))
}

/// `η(-m) = (1 - 2^{m+1}) ζ(-m)`.
pub fn eta_neg(b: &[BigRational], m: usize) -> BigRational {
    let f = BigRational::from_integer(BigInt::one() - (BigInt::one() << (m + 1)));
    f * zeta_neg(b, m)
}

pub fn to_f64(r: &BigRational) -> f64 {
    // scale to keep 17 significant digits through the integer division
    let scale = BigInt::from(10).pow(30);
    let q: BigInt = r.numer() * &scale / r.denom();
    q.to_string().parse::<f64>().unwrap() / 1e30
}

/// `K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt` by the trapezoid rule, which is
/// spectrally accurate for this analytic, doubly decaying integrand.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    let h = 0.02;
    let mut sum = 0.5 * (-x).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let v = (-x * t.cosh()).exp() * (nu * t).cosh();
        sum += v;
        if v < 1e-300 || (v < sum * 1e-18 && t > 5.0) {
            break;
        }
        k += 1;
    }
    sum * h
}

/// Unnormalized extended zeta `∫ t^{s-1} e^{-b/t}/(e^t-1) dt`, expanded
/// termwise as `Σ_{n≥1} 2 (b/n)^{s/2} K_s(2√(bn))`, for real `s`.
pub fn zeta_b_bessel(s: f64, b: f64) -> f64 {
    let mut sum = 0.0;
    for n in 1..5000 {
        let n = n as f64;
        let t = 2.0 * (b / n).powf(s / 2.0) * bessel_k(s, 2.0 * (b * n).sqrt());
        sum += t;
        if t < 1e-20 {
            break;
        }
    }
    sum
}

/// `ln Γ(z)` by Stirling's series after shifting `Re(z)` above 15.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let coeffs = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0];
    let mut series = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for c in coeffs {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// `ζ(s)` for `Re(s) > 0`, `s ≠ 1`, by Euler–Maclaurin in double precision.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = 30usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let big = Complex64::new(n as f64, 0.0);
    sum += big.powc(1.0 - s) / (s - 1.0) + 0.5 * big.powc(-s);
    let b2j = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
    let mut fact = 1.0;
    let mut rising = s;
    for (j, b) in b2j.iter().enumerate() {
        let j = j + 1;
        fact *= ((2 * j - 1) * 2 * j) as f64;
        sum += rising * b / fact * big.powc(-s - (2 * j - 1) as f64);
        rising = rising * (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
    }
    sum
}

/// Relative difference `|a - b| / |b|`.
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// `B_n(q) = Σ_k C(n, k) B⁺_k (q-1)^{n-k}`, from `B_n(x+1) = Σ C(n,k) B_k(1) x^{n-k}`.
pub fn bernoulli_poly(b: &[BigRational], n: usize, q: &BigRational) -> BigRational {
    let x = q - BigRational::one();
    let mut acc = BigRational::zero();
    let mut c = BigInt::one();
    for (k, bk) in b.iter().enumerate().take(n + 1) {
        let mut p = BigRational::one();
        for _ in 0..n - k {
            p *= &x;
        }
        acc += bk * BigRational::from_integer(c.clone()) * p;
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    acc
}

/// `ζ(-m, q) = -B_{m+1}(q)/(m+1)`.
pub fn hurwitz_neg(b: &[BigRational], m: usize, q: &BigRational) -> BigRational {
    -(bernoulli_poly(b, m + 1, q) / BigRational::from_integer(BigInt::from(m + 1)))
}

/// Standard Dirichlet lambda `λ(-m) = (1 - 2^m) ζ(-m)`.
pub fn lambda_std_neg(b: &[BigRational], m: usize) -> BigRational {
    let f = BigRational::from_integer(BigInt::one() - (BigInt::one() << m));
    f * zeta_neg(b, m)
}
