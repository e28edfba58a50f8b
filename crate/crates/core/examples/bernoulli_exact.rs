//! Exact Bernoulli numbers and polynomials, and the exact values of
//! ζ(-m), ζ(-m, q), η(-m) and λ(-m) they determine.
//!
//! cargo run --example bernoulli_exact

use zetadr::exact::{self, LambdaConvention};
use zetadr::numerics::{rational_to_decimal, DISPLAY_DIGITS};

fn main() -> zetadr::Result<()> {
    for n in [0, 1, 2, 3, 4, 12, 20, 60] {
        let b = exact::bernoulli(n)?;
        println!("B_{n:<3} = {b}");
    }
    println!("von Staudt-Clausen holds for n = 100: {}", exact::von_staudt_clausen_holds(100)?);

    let half = exact::ratio(1, 2);
    println!("B_2(1/2)  = {}", exact::bernoulli_poly(2, &half)?);

    for m in [0, 1, 3, 11] {
        println!(
            "m = {m:<2}  zeta(-m) = {:<12} eta(-m) = {:<10} lambda_std(-m) = {:<10} lambda_paper(-m) = {}",
            exact::zeta_neg(m)?.to_string(),
            exact::eta_neg(m)?.to_string(),
            exact::lambda_neg(m, LambdaConvention::Standard)?.to_string(),
            exact::lambda_neg(m, LambdaConvention::Paper)?
        );
    }
    println!("zeta(-3, 1/2) = {}", exact::hurwitz_neg(3, &half)?);

    // the exact value side of the eta identity
    let s = exact::alternating_factorial_sum(60, exact::eta_neg)?;
    println!("sum_(m<=60) (-1)^m eta(-m)/m! = {}", rational_to_decimal(&s, DISPLAY_DIGITS));
    Ok(())
}
