//! Working precision, compensated sums and the convergent-series driver.
//!
//! cargo run --example precision_basics

use zetadr::numerics::{compensated_sum, sum_series, ConvergencePolicy, HPReal, DISPLAY_DIGITS};

fn main() -> zetadr::Result<()> {
    let d = 64;

    // 1 + 1e-40 - 1 survives at 64 digits
    let tiny = HPReal::pow10(-40, d);
    let s = compensated_sum(&[HPReal::one(d), tiny.clone(), -HPReal::one(d)]);
    println!("1 + 1e-40 - 1          = {}", s.to_decimal(DISPLAY_DIGITS));

    // Σ (-1)^m/m! = 1/e with the default stop rule (three consecutive small terms)
    let policy = ConvergencePolicy::standard(d, 10_000);
    let mut w = HPReal::one(d);
    let r = sum_series(
        |m| {
            if m > 0 {
                w = &(-&w) / &HPReal::from_u64(m as u64, d);
            }
            w.clone()
        },
        &policy,
    );
    println!("sum (-1)^m/m!          = {} ({} terms, converged {})", r.value.to_decimal(DISPLAY_DIGITS), r.terms_used, r.converged);
    println!("1/e                    = {}", HPReal::e(d).recip().to_decimal(DISPLAY_DIGITS));

    // geometric series Σ e^-(n+1) = 1/(e-1)
    let q = (-HPReal::one(d)).exp();
    let mut t = HPReal::one(d);
    let g = sum_series(
        |_| {
            t = &t * &q;
            t.clone()
        },
        &policy,
    );
    println!("sum e^-(n+1)           = {} ({} terms)", g.value.to_decimal(DISPLAY_DIGITS), g.terms_used);

    // the same constant at a higher precision agrees to the shorter one's digits
    let hi = (&HPReal::e(100) - &HPReal::one(100)).recip();
    println!("1/(e-1) at 100 digits  = {}", hi.to_decimal(60));
    Ok(())
}
