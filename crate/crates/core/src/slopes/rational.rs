use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot_words::{Family, KnotSpec};

/// Largest accepted `|p|` or `q`.
pub const SLOPE_COMPONENT_CAP: i64 = i32::MAX as i64;

/// A surgery slope `p/q` in lowest terms with `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSlope")]
pub struct Slope {
    p: i64,
    q: i64,
}

#[derive(Deserialize)]
struct RawSlope {
    p: i64,
    q: i64,
}

impl TryFrom<RawSlope> for Slope {
    type Error = Error;

    fn try_from(raw: RawSlope) -> Result<Self> {
        Slope::new(raw.p, raw.q)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("slope denominator is zero".into()));
        }
        let r = Ratio::new(p, q);
        let (p, q) = (*r.numer(), *r.denom());
        if p.abs() > SLOPE_COMPONENT_CAP || q > SLOPE_COMPONENT_CAP {
            return Err(Error::InvalidInput(format!(
                "slope {p}/{q} exceeds the component cap {SLOPE_COMPONENT_CAP}"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse slope {text:?}; expected p/q or an integer"));
        let text = text.trim();
        let (p, q) = match text.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (text, "1"),
        };
        let p = p.parse::<i64>().map_err(|_| bad())?;
        let q = q.parse::<i64>().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// An open interval with possibly infinite ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn contains(&self, v: f64) -> bool {
        v > self.lo && v < self.hi
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |v: f64| {
            if v.is_infinite() {
                if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
            } else {
                format!("{v}")
            }
        };
        write!(f, "({}, {})", end(self.lo), end(self.hi))
    }
}

/// The interval of slopes the elliptic branches certify.
pub fn lo_interval(spec: &KnotSpec) -> Result<OpenInterval> {
    spec.require_slopes()?;
    let n = spec.n as f64;
    Ok(match spec.family {
        Family::EvenMinus => OpenInterval {
            lo: f64::NEG_INFINITY,
            hi: 1.0,
        },
        Family::OddPlus => OpenInterval {
            lo: f64::NEG_INFINITY,
            hi: 2.0 * n - 1.0,
        },
        Family::OddMinus => OpenInterval {
            lo: 3.0 - 2.0 * n,
            hi: f64::INFINITY,
        },
    })
}

/// Checks `r` against the certified interval, excluding `r = 0`.
pub fn check_covered(spec: &KnotSpec, r: Slope) -> Result<()> {
    if r.is_zero() {
        return Err(Error::ZeroSlope);
    }
    let interval = lo_interval(spec)?;
    // Integer endpoints compared exactly: r < hi  <=>  p < hi q.
    let (p, q) = (r.p() as i128, r.q() as i128);
    let below_hi = interval.hi.is_infinite() || p < interval.hi as i128 * q;
    let above_lo = interval.lo.is_infinite() || p > interval.lo as i128 * q;
    if below_hi && above_lo {
        Ok(())
    } else {
        Err(Error::SlopeNotCovered {
            slope: r.to_string(),
            knot: spec.to_string(),
            interval: interval.to_string(),
        })
    }
}
