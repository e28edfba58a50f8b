//! Precision-parameterized scalars, compensated summation and the series driver.

mod complex;
mod real;
mod series;

use std::sync::OnceLock;

pub use complex::HPComplex;
pub use real::{bits_for_digits, rational_to_decimal, HPReal};
pub use series::{
    compensated_sum, compensated_sum_complex, sum_series, sum_series_complex, CompensatedComplexSum,
    CompensatedSum, ConvergencePolicy, SeriesResult, StopRule, Summand,
};

use crate::error::{Error, Result};

/// Working precision when nothing else is configured.
pub const DEFAULT_DIGITS: u32 = 64;
/// Smallest working precision accepted anywhere.
pub const MIN_DIGITS: u32 = 50;
/// Significant digits shown in reports.
pub const DISPLAY_DIGITS: u32 = 30;
/// Environment variable overriding [`DEFAULT_DIGITS`].
pub const DIGITS_ENV: &str = "ZETADR_DIGITS";

/// Validates a requested working precision.
pub fn check_digits(digits: u32) -> Result<u32> {
    if digits < MIN_DIGITS {
        return Err(Error::Domain(format!("precision must be at least {MIN_DIGITS} digits, got {digits}")));
    }
    Ok(digits)
}

/// Parses a `ZETADR_DIGITS` value.
pub fn parse_digits(raw: &str) -> Result<u32> {
    let d: u32 = raw
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{DIGITS_ENV} must be a positive integer, got {raw:?}")))?;
    check_digits(d)
}

/// Default working precision: `ZETADR_DIGITS` if set and valid, else 64.
///
/// Read once per process.
pub fn default_digits() -> u32 {
    static DIGITS: OnceLock<u32> = OnceLock::new();
    *DIGITS.get_or_init(|| {
        std::env::var(DIGITS_ENV)
            .ok()
            .and_then(|raw| parse_digits(&raw).ok())
            .unwrap_or(DEFAULT_DIGITS)
    })
}
