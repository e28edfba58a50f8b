//! The full identity ledger as a markdown document.
//!
//! cargo run --release --example identity_ledger > ledger.md

fn main() -> zetadr::Result<()> {
    let digits = zetadr::numerics::default_digits();
    print!("{}", zetadr::identity::ledger_report(digits)?);
    Ok(())
}
