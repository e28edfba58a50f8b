//! High-precision zeta-family evaluation, delta-comb (DR) pairings and a
//! numerical harness for six alternating-factorial series identities.

pub mod cli;
pub mod dr;
pub mod error;
pub mod exact;
pub mod family;
pub mod identity;
pub mod numerics;
pub mod quadrature;
pub mod zeta;

pub use error::{Error, Result};
