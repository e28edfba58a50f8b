//! Function-family tags shared by the FTR integrals and the delta combs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{HPComplex, HPReal};

/// The eight members with an integral (FTR) form and a delta-comb (DR) form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gamma,
    Egamma,
    Rzf,
    Erzf,
    Hzf,
    Ehzf,
    Hlzf,
    Ehlzf,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gamma,
        Family::Egamma,
        Family::Rzf,
        Family::Erzf,
        Family::Hzf,
        Family::Ehzf,
        Family::Hlzf,
        Family::Ehlzf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::Egamma => "egamma",
            Family::Rzf => "rzf",
            Family::Erzf => "erzf",
            Family::Hzf => "hzf",
            Family::Ehzf => "ehzf",
            Family::Hlzf => "hlzf",
            Family::Ehlzf => "ehlzf",
        }
    }

    /// Whether the member carries the `e^{-b/t}` regulator.
    pub fn is_extended(self) -> bool {
        matches!(self, Family::Egamma | Family::Erzf | Family::Ehzf | Family::Ehlzf)
    }

    /// The same member without the regulator.
    pub fn base(self) -> Family {
        match self {
            Family::Egamma => Family::Gamma,
            Family::Erzf => Family::Rzf,
            Family::Ehzf => Family::Hzf,
            Family::Ehlzf => Family::Hlzf,
            other => other,
        }
    }

    pub fn uses_a(self) -> bool {
        matches!(self, Family::Hzf | Family::Ehzf | Family::Hlzf | Family::Ehlzf)
    }

    pub fn uses_z(self) -> bool {
        matches!(self, Family::Hlzf | Family::Ehlzf)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

/// Shift `a`, regulator `b` and Lerch argument `z`; unused fields are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub a: HPComplex,
    pub b: HPReal,
    pub z: HPComplex,
}

impl FamilyParams {
    /// `a = 1`, `b = 0`, `z = 1`.
    pub fn new(digits: u32) -> Self {
        FamilyParams { a: HPComplex::one(digits), b: HPReal::zero(digits), z: HPComplex::one(digits) }
    }

    pub fn with_a(mut self, a: HPComplex) -> Self {
        self.a = a;
        self
    }

    pub fn with_b(mut self, b: HPReal) -> Self {
        self.b = b;
        self
    }

    pub fn with_z(mut self, z: HPComplex) -> Self {
        self.z = z;
        self
    }

    pub fn digits(&self) -> u32 {
        self.a.digits().max(self.b.digits()).max(self.z.digits())
    }
}
