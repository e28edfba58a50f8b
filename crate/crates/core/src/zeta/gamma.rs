//! Complex gamma by Spouge's approximation, with reflection for `Re(s) < 1/2`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::numerics::{HPComplex, HPReal};

/// Spouge parameter and coefficients `c_0..c_{a-1}` for one working precision.
struct Spouge {
    a: i64,
    coeffs: Vec<HPReal>,
}

fn spouge(digits: u32) -> Arc<Spouge> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Spouge>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("spouge cache").get(&digits) {
        return s.clone();
    }
    // relative error < a^{-1/2} (2π)^{-(a+1/2)}
    let a = (digits as f64 * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI).ln()).ceil() as i64 + 2;
    // the c_k alternate and reach roughly e^a, so they are formed with room to cancel
    let cd = 2 * digits + 20;
    let two_pi = &HPReal::pi(cd) * &HPReal::from_i64(2, cd);
    let half = HPReal::from_f64(0.5, cd);
    let mut coeffs = vec![two_pi.sqrt()];
    let mut fact = HPReal::one(cd);
    for k in 1..a {
        if k > 1 {
            fact = &fact * &HPReal::from_i64(k - 1, cd);
        }
        let base = HPReal::from_i64(a - k, cd);
        let pw = base.powf(&(&HPReal::from_i64(k, cd) - &half));
        let ex = HPReal::from_i64(a - k, cd).exp();
        let mut c = &(&pw * &ex) / &fact;
        if k % 2 == 0 {
            c = -c;
        }
        coeffs.push(c);
    }
    let s = Arc::new(Spouge { a, coeffs });
    cache.lock().expect("spouge cache").insert(digits, s.clone());
    s
}

/// `Γ(z+1)` for `Re(z) > 0`.
fn gamma_plus_one(z: &HPComplex, digits: u32) -> HPComplex {
    let sp = spouge(digits);
    let cd = 2 * digits + 20;
    let z = z.with_digits(cd);
    let mut sum = HPComplex::from_real(sp.coeffs[0].clone());
    for k in 1..sp.a {
        let den = &z + &HPComplex::from_real(HPReal::from_i64(k, cd));
        sum = &sum + &(&HPComplex::from_real(sp.coeffs[k as usize].clone()) / &den);
    }
    let za = &z + &HPComplex::from_real(HPReal::from_i64(sp.a, cd));
    let half = HPComplex::from_real(HPReal::from_f64(0.5, cd));
    let lead = (&(&(&z + &half) * &za.ln()) - &za).exp();
    (&lead * &sum).with_digits(digits)
}

/// `Γ(s)`; poles at `0, -1, -2, ...`.
pub fn gamma(s: &HPComplex) -> Result<HPComplex> {
    if let Some(n) = s.as_integer() {
        if n <= 0 {
            return Err(Error::Pole(format!("gamma at s = {n}")));
        }
    }
    let d = s.digits();
    let wd = d + 10;
    let sw = s.with_digits(wd);
    let half = HPReal::from_f64(0.5, wd);
    let out = if sw.re < half {
        // Γ(s) = π / (sin(πs) Γ(1-s))
        let pi = HPReal::pi(wd);
        let one_minus = &HPComplex::one(wd) - &sw;
        let g = &gamma_plus_one(&one_minus, wd) / &one_minus;
        let sn = sw.scale(&pi).sin();
        &HPComplex::from_real(pi) / &(&sn * &g)
    } else {
        &gamma_plus_one(&sw, wd) / &sw
    };
    Ok(out.with_digits(d))
}
