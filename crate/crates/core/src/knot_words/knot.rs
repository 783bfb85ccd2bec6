use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three double twist families with elliptic representation curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `C(2m, -2n)`
    EvenMinus,
    /// `C(2m+1, 2n)`
    OddPlus,
    /// `C(2m+1, -2n)`
    OddMinus,
}

impl Family {
    pub fn is_odd(self) -> bool {
        !matches!(self, Family::EvenMinus)
    }
}

/// A double twist knot in one of the supported families.
///
/// Internally every knot is written as `C(k, -2p)`: `k` is the first Conway
/// entry, and `p` is signed (`p = -n` for `C(2m+1, 2n)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotSpec {
    pub family: Family,
    pub m: u32,
    pub n: u32,
}

impl KnotSpec {
    pub fn new(family: Family, m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "twist parameters must be >= 1, got m = {m}, n = {n}"
            )));
        }
        Ok(Self { family, m, n })
    }

    pub fn even_minus(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::EvenMinus, m, n)
    }

    pub fn odd_plus(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::OddPlus, m, n)
    }

    pub fn odd_minus(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::OddMinus, m, n)
    }

    pub fn m(&self) -> i64 {
        self.m as i64
    }

    pub fn n(&self) -> i64 {
        self.n as i64
    }

    /// First Conway entry.
    pub fn k(&self) -> i64 {
        match self.family {
            Family::EvenMinus => 2 * self.m(),
            _ => 2 * self.m() + 1,
        }
    }

    /// Signed twist parameter `p` of `C(k, -2p)`.
    pub fn twist_p(&self) -> i64 {
        match self.family {
            Family::OddPlus => -self.n(),
            _ => self.n(),
        }
    }

    /// Exponent correction in the longitude: `0` for even `k`, `2p` for odd `k`.
    pub fn epsilon(&self) -> i64 {
        if self.family.is_odd() {
            2 * self.twist_p()
        } else {
            0
        }
    }

    /// Conway pair `(k, l)`.
    pub fn conway(&self) -> (i64, i64) {
        (self.k(), -2 * self.twist_p())
    }

    /// `C(2m+1, -2n)` curves only give slope branches for `n >= 2`.
    pub fn supports_slopes(&self) -> bool {
        !(self.family == Family::OddMinus && self.n == 1)
    }

    pub(crate) fn require_slopes(&self) -> Result<()> {
        if self.supports_slopes() {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily(format!(
                "{self}: C(2m+1,-2n) slope branches require n >= 2"
            )))
        }
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, l) = self.conway();
        write!(f, "C({k},{l})")
    }
}
