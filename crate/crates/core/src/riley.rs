//! The Riley polynomial of `C(k, -2p)` in its Chebyshev `(t, z)` form, and the
//! real root branches that carry elliptic representations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::chebyshev::s;
use crate::error::{ensure_finite, Error, Result};
use crate::knot_words::{Family, KnotSpec};
use crate::numeric::{bisect, try_bisect};

/// A point `(x, y)` with the derived trace coordinates and Riley value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub z: f64,
    pub riley_value: f64,
}

impl CurvePoint {
    pub fn at(spec: &KnotSpec, x: f64, y: f64) -> Self {
        let (t, z) = tz_eval(spec, x, y);
        let riley_value = riley_from_tz(spec.twist_p(), t, z);
        Self {
            x,
            y,
            t,
            z,
            riley_value,
        }
    }
}

/// `t = tr rho(w)` and the companion coordinate `z`.
pub fn tz_eval(spec: &KnotSpec, x: f64, y: f64) -> (f64, f64) {
    let m = spec.m();
    let (s_m, s_m1) = (s(m, y), s(m - 1, y));
    let u = y + 2.0 - x;
    match spec.family {
        Family::EvenMinus => (
            2.0 + u * (y - 2.0) * s_m1 * s_m1,
            1.0 + u * s_m1 * (s_m - s_m1),
        ),
        Family::OddPlus | Family::OddMinus => {
            let alpha = s_m - s_m1;
            (2.0 - u * alpha * alpha, 1.0 - u * s_m * alpha)
        }
    }
}

#[inline]
fn riley_from_tz(p: i64, t: f64, z: f64) -> f64 {
    s(p, t) - z * s(p - 1, t)
}

/// `R(x, y) = S_p(t) - z S_{p-1}(t)` with the signed twist parameter `p`.
pub fn riley_eval(spec: &KnotSpec, x: f64, y: f64) -> f64 {
    let (t, z) = tz_eval(spec, x, y);
    riley_from_tz(spec.twist_p(), t, z)
}

/// `P(x, y) = (y + 2 - x) S_{m-1}(y)^2 (t + 2 - x) S_{n-1}(t)^2 - 1` for `C(2m, -2n)`.
///
/// On `x <= 4 <= y + 2` its zero set agrees with that of the Riley polynomial and it is
/// strictly increasing in `y >= 2`.
pub fn p_eval(m: u32, n: u32, x: f64, y: f64) -> f64 {
    let (m, n) = (m as i64, n as i64);
    let s_m1 = s(m - 1, y);
    let t = 2.0 + (y + 2.0 - x) * (y - 2.0) * s_m1 * s_m1;
    let s_n1 = s(n - 1, t);
    (y + 2.0 - x) * s_m1 * s_m1 * (t + 2.0 - x) * s_n1 * s_n1 - 1.0
}

/// Lower end of the `x` interval on which `y(x)` exists.
pub fn even_x_min(m: u32, n: u32) -> f64 {
    4.0 - 1.0 / (m as f64 * n as f64)
}

const X_SLACK: f64 = 1e-12;

/// The unique `y >= 2` with `P(x, y) = 0`, for `x` in `[4 - 1/(mn), 4]`.
pub fn solve_y_of_x(m: u32, n: u32, x: f64, tol: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be >= 1".into()));
    }
    let lo = even_x_min(m, n);
    if x < lo - X_SLACK || x > 4.0 + X_SLACK {
        return Err(Error::Domain {
            what: "x",
            value: x,
            admissible: format!("[{lo}, 4]"),
        });
    }
    let f = |y: f64| p_eval(m, n, x, y);
    if f(2.0) >= 0.0 {
        return Ok(2.0);
    }
    let mut hi = 4.0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NotFound(format!("no upper bracket for y(x) at x = {x}")));
        }
    }
    bisect(f, 2.0, hi, tol)
}

/// The cosine nodes `t_j` and the partition points `s_j(y)` used to bracket
/// the roots of `R(., y)` for odd `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketData {
    pub n: u32,
    pub y: f64,
    /// `t_j = 2cos(j pi / (2n+1))` for `j = 1..=2n`.
    pub t_roots: Vec<f64>,
    /// `s_j(y)` for `j = 0..=2n`, with `s_0 = y + 2`.
    pub s_values: Vec<f64>,
}

impl BracketData {
    /// `s_j(y)` for `0 <= j <= 2n`.
    pub fn s(&self, j: usize) -> f64 {
        self.s_values[j]
    }

    /// `t_j` for `1 <= j <= 2n`.
    pub fn t(&self, j: usize) -> f64 {
        self.t_roots[j - 1]
    }
}

pub fn brackets(m: u32, n: u32, y: f64) -> Result<BracketData> {
    ensure_finite("y", y)?;
    if y < 2.0 {
        return Err(Error::Domain {
            what: "y",
            value: y,
            admissible: "[2, inf)".into(),
        });
    }
    let (mi, ni) = (m as i64, n as i64);
    let alpha = s(mi, y) - s(mi - 1, y);
    let t_roots: Vec<f64> = (1..=2 * ni)
        .map(|j| 2.0 * (j as f64 * PI / (2 * ni + 1) as f64).cos())
        .collect();
    let mut s_values = Vec::with_capacity(t_roots.len() + 1);
    s_values.push(y + 2.0);
    s_values.extend(t_roots.iter().map(|t| y + 2.0 - (2.0 - t) / (alpha * alpha)));
    Ok(BracketData {
        n,
        y,
        t_roots,
        s_values,
    })
}

fn require_odd(spec: &KnotSpec) -> Result<()> {
    if spec.family.is_odd() {
        Ok(())
    } else {
        Err(Error::UnsupportedFamily(format!(
            "{spec}: x(y) branches exist for odd k only"
        )))
    }
}

/// The endpoints of the bracket that contains the branch root `x_{n-1}(y)`.
pub fn slope_branch_bracket(spec: &KnotSpec, y: f64) -> Result<(f64, f64)> {
    require_odd(spec)?;
    spec.require_slopes()?;
    let data = brackets(spec.m, spec.n, y)?;
    let n = spec.n as usize;
    let upper = match spec.family {
        Family::OddPlus => data.s(2 * n - 2),
        _ => data.s(2 * n - 3),
    };
    Ok((data.s(2 * n - 1), upper))
}

/// The smallest real root `x_{n-1}(y)` of `R(., y)` for `C(2m+1, +-2n)`.
pub fn solve_x_of_y(spec: &KnotSpec, y: f64, tol: f64) -> Result<f64> {
    ensure_finite("y", y)?;
    let (lo, hi) = slope_branch_bracket(spec, y)?;
    let (r_lo, r_hi) = (riley_eval(spec, lo, y), riley_eval(spec, hi, y));
    let n = spec.n as i32;
    // R(s_{2n-1}) has sign (-1)^n for C(2m+1,2n) and (-1)^(n-1) for C(2m+1,-2n).
    let expected_lo = match spec.family {
        Family::OddPlus => (-1f64).powi(n),
        _ => (-1f64).powi(n - 1),
    };
    if r_lo.signum() != expected_lo || r_hi.signum() != -expected_lo {
        return Err(Error::Internal(format!(
            "bracket signs R({lo}) = {r_lo:e}, R({hi}) = {r_hi:e} at y = {y} for {spec}"
        )));
    }
    bisect(|x| riley_eval(spec, x, y), lo, hi, tol)
}

/// The root `x_0(y) > y + 2` of `R(., y)` for `C(2m+1, -2n)`. Diagnostic only;
/// it carries no elliptic slope branch.
pub fn solve_outer_root(spec: &KnotSpec, y: f64, tol: f64) -> Result<f64> {
    ensure_finite("y", y)?;
    if spec.family != Family::OddMinus {
        return Err(Error::UnsupportedFamily(format!(
            "{spec}: the outer root exists for C(2m+1,-2n) only"
        )));
    }
    brackets(spec.m, spec.n, y)?;
    let lo = y + 2.0;
    let mut hi = lo + 1.0;
    while riley_eval(spec, hi, y) > 0.0 {
        hi = lo + 2.0 * (hi - lo);
        if hi > 1e12 {
            return Err(Error::NotFound(format!("outer root at y = {y}")));
        }
    }
    bisect(|x| riley_eval(spec, x, y), lo, hi, tol)
}

const Y_SCAN_STEP: f64 = 1.0 / 256.0;
const Y_SCAN_CAP: f64 = 1e6;

/// The smallest `y > 2` with `x(y) = 4` on the slope branch.
pub fn find_y_star(spec: &KnotSpec, tol: f64) -> Result<f64> {
    require_odd(spec)?;
    spec.require_slopes()?;
    let g = |y: f64| solve_x_of_y(spec, y, tol).map(|x| x - 4.0);
    if g(2.0)? >= 0.0 {
        return Err(Error::Internal(format!("x(2) >= 4 for {spec}")));
    }
    let mut a = 2.0;
    let mut step = Y_SCAN_STEP;
    loop {
        let b = a + step;
        if b > Y_SCAN_CAP {
            return Err(Error::NotFound(format!("x(y) = 4 below y = {Y_SCAN_CAP} for {spec}")));
        }
        if g(b)? >= 0.0 {
            return try_bisect(g, a, b, tol);
        }
        a = b;
        // x(y) > y - 2 on the branch, so the crossing lies below y = 6; the growth
        // only matters if that bound were violated.
        if a > 8.0 {
            step *= 2.0;
        }
    }
}
