//! A grid sweep of the extended Hurwitz identity written as CSV.
//!
//! cargo run --example sweep_csv [-- out.csv]

use zetadr::exact::ratio;
use zetadr::identity::{sweep, sweep_to_csv, CaseFlags, SweepGrid, TheoremId};
use zetadr::numerics::DISPLAY_DIGITS;

fn main() -> zetadr::Result<()> {
    let grid = SweepGrid {
        id: TheoremId::T4,
        q: vec![ratio(1, 1), ratio(2, 1)],
        b: vec![ratio(1, 2), ratio(1, 1), ratio(3, 1)],
        flags: CaseFlags::default(),
        trunc: 40,
        digits: 64,
    };
    let records: Vec<_> = sweep(&grid).iter().map(|p| p.record(grid.id, DISPLAY_DIGITS)).collect();
    let csv = sweep_to_csv(&records)?;
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, csv).map_err(|e| zetadr::Error::Resource(e.to_string()))?,
        None => print!("{csv}"),
    }
    Ok(())
}
