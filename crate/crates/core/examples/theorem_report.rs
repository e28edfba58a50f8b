//! All six identities computed three ways, plus the consistency web.
//!
//! cargo run --example theorem_report

use zetadr::exact;
use zetadr::identity::{cross_checks, run_theorem, TheoremCase, TheoremId};

fn main() -> zetadr::Result<()> {
    let d = 64;
    for id in TheoremId::ALL {
        let mut case = TheoremCase::new(id, d);
        if id.uses_b() {
            case = case.with_b(exact::ratio(2, 1));
        }
        if id.uses_q() {
            case = case.with_q(exact::ratio(1, 2));
        }
        let rep = run_theorem(&case)?;
        let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        println!("{id}: {}  (b = {}, q = {})", id.statement(), case.b, case.q);
        println!("    value side  {}", show(rep.value_side.as_ref().map(|v| v.value.to_decimal(25))));
        println!("    DR side     {}", show(rep.dr_side.as_ref().map(|v| v.value.re.to_decimal(25))));
        println!("    closed form {}", rep.paper_rhs.to_decimal(25));
        println!("    |DR - rhs| = {}", show(rep.residual_dr_vs_rhs.as_ref().map(|v| v.to_decimal(3))));
        for n in &rep.notes {
            println!("    note: {n}");
        }
    }
    println!();
    for c in cross_checks(d)? {
        println!("{:<45} residual {:<12} {}", c.name, c.residual, if c.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
