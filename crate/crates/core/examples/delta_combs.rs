//! Delta-comb representations: coefficients, a JSON dump, and pairings with
//! test functions.
//!
//! cargo run --example delta_combs

use zetadr::dr::{build_dr, inner_product, TestFn, Truncation};
use zetadr::exact::{self, LambdaConvention};
use zetadr::family::{Family, FamilyParams};
use zetadr::numerics::{HPReal, DISPLAY_DIGITS};

fn main() -> zetadr::Result<()> {
    let d = 64;
    let gamma = build_dr(Family::Gamma, &FamilyParams::new(d))?;
    println!("gamma comb, first five terms:\n{}", gamma.dump_json(4)?);

    let rzf = build_dr(Family::Rzf, &FamilyParams::new(d))?;
    println!("rzf indices: {:?}", rzf.index_names());
    let (w, k) = rzf.coeff(&[2, 3, 1])?;
    println!("rzf coefficient at (n, m, l) = (2, 3, 1): {} at s = -{k}", w.to_decimal(20));

    let trunc = Truncation::default();
    let tests = [
        TestFn::One,
        TestFn::EtaFactor,
        TestFn::lambda(LambdaConvention::Standard),
        TestFn::lambda(LambdaConvention::Paper),
        TestFn::ExpScale(exact::ratio(2, 1)),
    ];
    for phi in &tests {
        let r = inner_product(&rzf, phi, &trunc, 0)?;
        println!(
            "<zeta, Gamma * {:<15}> / 2pi = {}  (tail bound {})",
            phi.name(),
            r.value.re.to_decimal(DISPLAY_DIGITS),
            r.tail_bound.to_decimal(3)
        );
    }

    // the extended comb carries the extra factor e^-b
    let b = HPReal::from_f64(1.0, d);
    let erzf = build_dr(Family::Erzf, &FamilyParams::new(d).with_b(b))?;
    let r = inner_product(&erzf, &TestFn::One, &trunc, 0)?;
    println!("erzf, b = 1, phi = 1: {}", r.value.re.to_decimal(DISPLAY_DIGITS));
    println!("truncations used: {:?}", r.truncations);
    Ok(())
}
