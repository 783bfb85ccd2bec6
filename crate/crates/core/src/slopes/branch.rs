use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::s;
use crate::error::{Error, Result};
use crate::knot_words::{Family, KnotSpec};
use crate::numeric::wrap_angle;
use crate::representations::{
    build_representation, closed_form_longitude, theta0, Representation,
};
use crate::riley::{find_y_star, riley_eval};

use super::rational::Slope;

/// One of the four one-parameter families of elliptic representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `theta` in `(0, theta_0)`, `C(2m,-2n)` only.
    EvenLow,
    /// `theta` in `(pi - theta_0, pi)`, `C(2m,-2n)` only.
    EvenHigh,
    /// `theta(y)` for `y` in `(2, y*)`, odd `k`.
    OddPrimary,
    /// `pi - theta(y)` for `y` in `(2, y*)`, odd `k`.
    OddReflected,
}

impl Branch {
    pub fn is_even(self) -> bool {
        matches!(self, Branch::EvenLow | Branch::EvenHigh)
    }

    pub fn all_for(family: Family) -> [Branch; 2] {
        match family {
            Family::EvenMinus => [Branch::EvenLow, Branch::EvenHigh],
            _ => [Branch::OddPrimary, Branch::OddReflected],
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::EvenLow => "even_low",
            Branch::EvenHigh => "even_high",
            Branch::OddPrimary => "odd_primary",
            Branch::OddReflected => "odd_reflected",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "even_low" => Ok(Branch::EvenLow),
            "even_high" => Ok(Branch::EvenHigh),
            "odd_primary" => Ok(Branch::OddPrimary),
            "odd_reflected" => Ok(Branch::OddReflected),
            _ => Err(Error::InvalidInput(format!(
                "unknown branch {text:?}; expected even_low, even_high, odd_primary or odd_reflected"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchId {
    pub family: Family,
    pub branch: Branch,
}

impl BranchId {
    pub fn new(family: Family, branch: Branch) -> Result<Self> {
        if branch.is_even() == family.is_odd() {
            return Err(Error::InvalidInput(format!(
                "branch {branch} does not exist for family {family:?}"
            )));
        }
        Ok(Self { family, branch })
    }

    /// The branch whose slope range contains `r` (sign decides).
    pub fn for_slope(family: Family, r: Slope) -> Self {
        let negative = r.p() < 0;
        let branch = match (family, negative) {
            (Family::EvenMinus, true) => Branch::EvenLow,
            (Family::EvenMinus, false) => Branch::EvenHigh,
            (Family::OddPlus, true) | (Family::OddMinus, false) => Branch::OddPrimary,
            (Family::OddPlus, false) | (Family::OddMinus, true) => Branch::OddReflected,
        };
        Self { family, branch }
    }
}

/// A branch parameter value with its meridian angle, second trace coordinate
/// and closed-form longitude eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub param: f64,
    pub theta: f64,
    pub y: f64,
    pub x: f64,
    pub longitude: Complex64,
}

/// A point together with the continuous longitude argument `phi`, `L = e^{i phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracked {
    pub point: BranchPoint,
    pub phi: f64,
}

impl Tracked {
    /// `-phi / theta`.
    pub fn slope(&self) -> f64 {
        -self.phi / self.point.theta
    }
}

/// Largest wrapped phase increment accepted between neighbouring points.
const MAX_PHASE_STEP: f64 = PI / 4.0;
const MAX_SUBDIVISION: u32 = 48;
const ANCHOR_TOL: f64 = 1e-6;
const PATH_STEPS: usize = 32;

/// A branch prepared for evaluation: parameter domain, anchor and solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCurve {
    pub spec: KnotSpec,
    pub id: BranchId,
    lo: f64,
    hi: f64,
    y_star: Option<f64>,
    tol: f64,
}

impl BranchCurve {
    /// `tol` is the absolute bisection width for the inner curve solvers.
    pub fn new(spec: KnotSpec, branch: Branch, tol: f64) -> Result<Self> {
        spec.require_slopes()?;
        let id = BranchId::new(spec.family, branch)?;
        let (lo, hi, y_star) = match branch {
            Branch::EvenLow => (0.0, theta0(spec.m, spec.n), None),
            Branch::EvenHigh => (PI - theta0(spec.m, spec.n), PI, None),
            Branch::OddPrimary | Branch::OddReflected => {
                let ys = find_y_star(&spec, tol)?;
                (2.0, ys, Some(ys))
            }
        };
        Ok(Self {
            spec,
            id,
            lo,
            hi,
            y_star,
            tol,
        })
    }

    pub fn branch(&self) -> Branch {
        self.id.branch
    }

    /// Open parameter interval: `theta` for even branches, `y` for odd ones.
    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn y_star(&self) -> Option<f64> {
        self.y_star
    }

    /// The end where `y = 2`, the representation becomes reducible and `L = 1`.
    pub fn anchor(&self) -> f64 {
        match self.id.branch {
            Branch::EvenLow => self.hi,
            _ => self.lo,
        }
    }

    /// The end where the meridian becomes parabolic (`theta -> 0` or `pi`).
    pub fn singular_end(&self) -> f64 {
        match self.id.branch {
            Branch::EvenLow => self.lo,
            _ => self.hi,
        }
    }

    fn check_param(&self, param: f64) -> Result<()> {
        if param.is_finite() && param >= self.lo && param <= self.hi {
            if param == self.singular_end() {
                return Err(self.domain_error(param));
            }
            Ok(())
        } else {
            Err(self.domain_error(param))
        }
    }

    fn domain_error(&self, param: f64) -> Error {
        Error::Domain {
            what: if self.id.branch.is_even() { "theta" } else { "y" },
            value: param,
            admissible: format!("({}, {}) on branch {}", self.lo, self.hi, self.id.branch),
        }
    }

    pub fn representation(&self, param: f64) -> Result<Representation> {
        self.check_param(param)?;
        match self.id.branch {
            Branch::EvenLow | Branch::EvenHigh => build_representation(self.spec, param, self.tol),
            Branch::OddPrimary => Representation::odd(self.spec, param, false, self.tol),
            Branch::OddReflected => Representation::odd(self.spec, param, true, self.tol),
        }
    }

    pub fn point(&self, param: f64) -> Result<BranchPoint> {
        let rep = self.representation(param)?;
        Ok(BranchPoint {
            param,
            theta: rep.theta,
            y: rep.y,
            x: rep.x,
            longitude: closed_form_longitude(&self.spec, rep.meridian, rep.y)?,
        })
    }

    pub fn riley_residual(&self, pt: &BranchPoint) -> f64 {
        riley_eval(&self.spec, pt.x, pt.y).abs()
    }

    /// `phi = 0` at the reducible end, taken from the numerical `arg L` there.
    pub fn anchor_point(&self) -> Result<Tracked> {
        let point = self.point(self.anchor())?;
        if (point.longitude - 1.0).norm() > ANCHOR_TOL {
            return Err(Error::Internal(format!(
                "longitude at the reducible end of {} is {} instead of 1",
                self.id.branch, point.longitude
            )));
        }
        Ok(Tracked {
            point,
            phi: point.longitude.arg(),
        })
    }

    /// Continues `phi` from `from` to `to`, subdividing while the wrapped
    /// increment exceeds `pi/4`.
    pub fn advance(&self, from: &Tracked, to: BranchPoint) -> Result<Tracked> {
        self.advance_inner(from, to, 0)
    }

    fn advance_inner(&self, from: &Tracked, to: BranchPoint, depth: u32) -> Result<Tracked> {
        let step = wrap_angle(to.longitude.arg() - from.point.longitude.arg());
        if step.abs() <= MAX_PHASE_STEP {
            return Ok(Tracked {
                point: to,
                phi: from.phi + step,
            });
        }
        if depth >= MAX_SUBDIVISION {
            return Err(Error::Internal(format!(
                "phase of L jumps by {step} between {} and {}",
                from.point.param, to.param
            )));
        }
        let mid = self.point(0.5 * (from.point.param + to.param))?;
        let mid = self.advance_inner(from, mid, depth + 1)?;
        self.advance_inner(&mid, to, depth + 1)
    }

    /// Tracks `phi` along a straight path from the anchor.
    pub fn track(&self, param: f64) -> Result<Tracked> {
        self.check_param(param)?;
        let anchor = self.anchor();
        let mut cur = self.anchor_point()?;
        for i in 1..=PATH_STEPS {
            let p = if i == PATH_STEPS {
                param
            } else {
                anchor + (param - anchor) * i as f64 / PATH_STEPS as f64
            };
            cur = self.advance(&cur, self.point(p)?)?;
        }
        Ok(cur)
    }

    /// Continuous longitude argument at `param`, checked against the explicit formula.
    pub fn phi(&self, param: f64) -> Result<f64> {
        let tracked = self.track(param)?;
        let (closed, arg) = self.phi_closed_form(&tracked.point);
        if arg.abs() < 1.0 - 1e-9 && (closed - tracked.phi).abs() > 1e-6 {
            return Err(Error::Internal(format!(
                "tracked phi {} disagrees with the explicit formula {closed} at {param}",
                tracked.phi
            )));
        }
        Ok(tracked.phi)
    }

    /// `-phi / theta` at `param`.
    pub fn slope_value(&self, param: f64) -> Result<f64> {
        let tracked = self.track(param)?;
        Ok(tracked.slope())
    }

    /// The explicit arccos expression for `phi`, together with the arccos argument.
    pub fn phi_closed_form(&self, pt: &BranchPoint) -> (f64, f64) {
        let k = self.spec.m();
        let y = pt.y;
        let (u, v) = if self.id.branch.is_even() {
            (s(k, y) - s(k - 1, y), s(k - 1, y) - s(k - 2, y))
        } else {
            (s(k, y), s(k - 1, y))
        };
        let theta = pt.theta;
        let m = Complex64::from_polar(1.0, theta);
        let arg = (2.0 * u * v - (u * u + v * v) * (2.0 * theta).cos())
            / (m * u - m.inv() * v).norm_sqr();
        let ac = arg.clamp(-1.0, 1.0).acos();
        let n = self.spec.n() as f64;
        let base = (2.0 * n - 2.0) * PI;
        let phi = match (self.spec.family, self.id.branch) {
            (_, Branch::EvenLow) => ac,
            (_, Branch::EvenHigh) => -ac,
            // theta_1 = pi - theta(y) on reflected branches, so theta(y) = pi - theta.
            (Family::OddPlus, Branch::OddPrimary) => base - 4.0 * n * theta + ac,
            (Family::OddPlus, _) => -base + 4.0 * n * (PI - theta) - ac,
            (_, Branch::OddPrimary) => -base + 4.0 * n * theta + ac,
            (_, _) => base - 4.0 * n * (PI - theta) - ac,
        };
        (phi, arg)
    }
}
