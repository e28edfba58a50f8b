//! The extended gamma integral Γ_b(s) = ∫ t^(s-1) e^(-t-b/t) dt by
//! double-exponential-style quadrature, checked against its Bessel form.
//!
//! cargo run --example extended_gamma

use zetadr::numerics::{HPComplex, HPReal};
use zetadr::quadrature::gamma_b;

fn main() -> zetadr::Result<()> {
    let d = 64;
    let half = HPComplex::from_f64(0.5, 0.0, d);
    for b in [0.25, 1.0, 4.0] {
        let bb = HPReal::from_f64(b, d);
        let q = gamma_b(&half, &bb)?;
        // Γ_b(1/2) = √π e^(-2√b)
        let closed = &HPReal::pi(d).sqrt() * &(-&(&bb.sqrt() * &HPReal::from_i64(2, d))).exp();
        let rel = (&(&q.value.re - &closed).abs() / &closed).to_f64();
        println!(
            "b = {b:<4}  Gamma_b(1/2) = {}  closed form {}  rel. error {rel:.1e}  ({} nodes, level {})",
            q.value.re.to_decimal(25),
            closed.to_decimal(25),
            q.evaluations,
            q.level
        );
    }

    // reflection Γ_b(-s) = b^(-s) Γ_b(s)
    let b = HPReal::from_f64(2.0, d);
    let s = HPComplex::from_f64(1.5, 0.0, d);
    let lhs = gamma_b(&-&s, &b)?.value;
    let rhs = &HPComplex::from_real(b.clone()).pow(&-&s) * &gamma_b(&s, &b)?.value;
    println!("Gamma_2(-1.5) = {}  b^(-s) Gamma_2(1.5) = {}", lhs.to_decimal(25), rhs.to_decimal(25));

    // b -> 0 recovers Γ(s)
    let q = gamma_b(&HPComplex::from_f64(2.0, 0.0, d), &HPReal::from_f64(1e-8, d))?;
    println!("Gamma_(1e-8)(2) = {}", q.value.re.to_decimal(20));
    Ok(())
}
