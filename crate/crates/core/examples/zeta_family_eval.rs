//! Evaluating members of the zeta family and the route each one takes.
//!
//! cargo run --example zeta_family_eval

use zetadr::exact::LambdaConvention;
use zetadr::numerics::{HPComplex, HPReal, DISPLAY_DIGITS};
use zetadr::zeta::{evaluate, EvalRequest, Function, Normalization};

fn main() -> zetadr::Result<()> {
    let d = 64;
    let s = |re: f64, im: f64| HPComplex::from_f64(re, im, d);
    let requests = vec![
        ("Gamma(3+i)", EvalRequest::new(Function::Gamma, s(3.0, 1.0))),
        ("zeta(2)", EvalRequest::new(Function::Zeta, s(2.0, 0.0))),
        ("zeta(1/2)", EvalRequest::new(Function::Zeta, s(0.5, 0.0))),
        ("zeta(-11)", EvalRequest::new(Function::Zeta, s(-11.0, 0.0))),
        ("zeta(1/2+14i)", EvalRequest::new(Function::Zeta, s(0.5, 14.0))),
        ("zeta(3, 1/2)", EvalRequest::new(Function::Hurwitz, s(3.0, 0.0)).with_a_exact(zetadr::exact::ratio(1, 2))),
        (
            "Phi(1/2, 2, 1)",
            EvalRequest::new(Function::Lerch, s(2.0, 0.0)).with_z(HPComplex::from_f64(0.5, 0.0, d)),
        ),
        ("eta(2)", EvalRequest::new(Function::Eta, s(2.0, 0.0))),
        (
            "lambda_std(2)",
            EvalRequest::new(Function::Lambda, s(2.0, 0.0)).with_convention(LambdaConvention::Standard),
        ),
        (
            "zeta_1(2), unnormalized",
            EvalRequest::new(Function::ZetaB, s(2.0, 0.0))
                .with_b(HPReal::one(d))
                .with_normalization(Normalization::Unnormalized),
        ),
        ("Gamma_1(1/2)", EvalRequest::new(Function::GammaB, s(0.5, 0.0)).with_b(HPReal::one(d))),
    ];
    for (label, req) in requests {
        let ev = evaluate(&req)?;
        let exact = ev.exact.map(|r| format!("  exact {r}")).unwrap_or_default();
        println!("{label:<24} {:<70} [{}]{exact}", ev.value.to_decimal(DISPLAY_DIGITS), ev.route.as_str());
    }

    // lambda refuses to guess a convention
    let err = evaluate(&EvalRequest::new(Function::Lambda, s(2.0, 0.0))).unwrap_err();
    println!("lambda without a convention: {err}");
    Ok(())
}
