use crate::error::{Error, Result};
use crate::knot_words::KnotSpec;
use crate::numeric::wrap_angle;
use crate::representations::closed_form_longitude;
use crate::tolerance::Tolerances;

use num_complex::Complex64;

use super::branch::{BranchCurve, BranchId, Tracked};
use super::certificate::{evaluate, SurgeryCertificate, SCHEMA_VERSION};
use super::rational::{check_covered, Slope};
use super::sweep::{chebyshev_grid, points, track_points};

/// Search settings for [`solve_slope`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub tol: Tolerances,
    /// Chebyshev nodes on the first pass; doubled until `max_grid`.
    pub initial_grid: usize,
    pub max_grid: usize,
    /// Closest approach to the singular end of the branch.
    pub endpoint_cap: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            initial_grid: 256,
            max_grid: 1 << 20,
            endpoint_cap: 1e-12,
        }
    }
}

/// Distances below the nearest Chebyshev node, spaced by `10^(1/4)` down to `cap`.
fn log_tail(width: f64, nearest: f64, cap: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut d = nearest;
    loop {
        d /= 10f64.powf(0.25);
        if d < cap || d <= 0.0 {
            break;
        }
        out.push(d);
    }
    if out.last().is_some_and(|&last| last > cap) && cap < nearest && cap < width {
        out.push(cap);
    }
    out
}

/// Parameters ordered away from the anchor, ending in the logarithmic tail.
fn search_params(curve: &BranchCurve, size: usize, cap: f64) -> Vec<f64> {
    let (lo, hi) = curve.domain();
    let anchor = curve.anchor();
    let end = curve.singular_end();
    let mut grid = chebyshev_grid(lo, hi, size, 0.0);
    if anchor == hi {
        grid.reverse();
    }
    let nearest = (grid[grid.len() - 1] - end).abs();
    let toward_anchor = (anchor - end).signum();
    grid.extend(log_tail(hi - lo, nearest, cap).into_iter().map(|d| end + toward_anchor * d));
    grid
}

/// First neighbouring pair, walking from the anchor, across which slope - r changes sign.
fn find_bracket(curve: &BranchCurve, r: f64, cfg: &SolveConfig) -> Result<(Tracked, Tracked)> {
    let mut nearest = f64::NAN;
    let mut size = cfg.initial_grid.max(16);
    while size <= cfg.max_grid.max(16) {
        let params = search_params(curve, size, cfg.endpoint_cap);
        let chebyshev = size;
        let mut pts = Vec::with_capacity(params.len());
        for (i, res) in points(curve, &params).into_iter().enumerate() {
            match res {
                Ok(p) => pts.push(p),
                // Tail points so close to y* that x(y) rounds past 4 are skipped.
                Err(Error::Domain { .. }) if i >= chebyshev => {}
                Err(e) => return Err(e),
            }
        }
        let tracked = track_points(curve, pts)?;
        let mut prev = curve.anchor_point()?;
        for t in tracked {
            let (g_prev, g) = (prev.slope() - r, t.slope() - r);
            if nearest.is_nan() || g.abs() < (nearest - r).abs() {
                nearest = t.slope();
            }
            // At the anchor slope = 0 and r != 0, so the first sign is always -sign(r).
            if g == 0.0 || g_prev.signum() != g.signum() {
                return Ok((prev, t));
            }
            prev = t;
        }
        size *= 2;
    }
    Err(Error::SearchFailure {
        slope: format!("{r}"),
        nearest,
    })
}

/// Bisection of slope - r inside a bracket, carrying `phi` from the left end.
fn refine(curve: &BranchCurve, r: f64, mut a: Tracked, mut b: Tracked, tol: f64) -> Result<Tracked> {
    let ga = a.slope() - r;
    if ga == 0.0 {
        return Ok(a);
    }
    for _ in 0..4000 {
        let mid = 0.5 * (a.point.param + b.point.param);
        let strictly_inside = mid != a.point.param && mid != b.point.param;
        if (b.point.param - a.point.param).abs() <= tol || !strictly_inside {
            break;
        }
        let t = curve.advance(&a, curve.point(mid)?)?;
        let g = t.slope() - r;
        if g == 0.0 {
            return Ok(t);
        }
        if g.signum() == ga.signum() {
            a = t;
        } else {
            b = t;
        }
    }
    Ok(if (a.slope() - r).abs() <= (b.slope() - r).abs() { a } else { b })
}

/// Newton steps on `phi(theta, y) + r theta` with `y` held fixed.
fn polish(spec: &KnotSpec, r: f64, best: &Tracked) -> (f64, f64) {
    let y = best.point.y;
    let reference = best.point.longitude;
    let phi_at = |theta: f64| -> Option<f64> {
        let l = closed_form_longitude(spec, Complex64::from_polar(1.0, theta), y).ok()?;
        Some(best.phi + wrap_angle(l.arg() - reference.arg()))
    };
    let h = |theta: f64| phi_at(theta).map(|phi| phi + r * theta);
    let (mut theta, mut phi) = (best.point.theta, best.phi);
    let Some(mut h_cur) = h(theta) else {
        return (theta, phi);
    };
    for _ in 0..4 {
        let step = 1e-7 * theta.abs().max(1e-3);
        let (Some(hp), Some(hm)) = (h(theta + step), h(theta - step)) else {
            break;
        };
        let slope = (hp - hm) / (2.0 * step);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = theta - h_cur / slope;
        if (next - best.point.theta).abs() > 1e-8 {
            break;
        }
        let Some(h_next) = h(next) else { break };
        if h_next.abs() >= h_cur.abs() {
            break;
        }
        theta = next;
        h_cur = h_next;
        phi = phi_at(theta).unwrap_or(phi);
    }
    (theta, phi)
}

/// Finds a point on the branch selected by the sign of `r` with `-phi/theta = r`
/// and returns the fully evaluated certificate.
pub fn solve_slope(spec: &KnotSpec, r: Slope, cfg: &SolveConfig) -> Result<SurgeryCertificate> {
    check_covered(spec, r)?;
    let id = BranchId::for_slope(spec.family, r);
    let curve = BranchCurve::new(*spec, id.branch, cfg.tol.param)?;
    let target = r.value();
    let (a, b) = find_bracket(&curve, target, cfg)?;
    let best = refine(&curve, target, a, b, cfg.tol.param)?;
    let (theta, phi) = polish(spec, target, &best);
    let y = best.point.y;
    let v = evaluate(*spec, r, theta, y, phi, &cfg.tol);
    Ok(SurgeryCertificate {
        schema_version: SCHEMA_VERSION.to_string(),
        knot: spec.to_string(),
        spec: *spec,
        r,
        branch: id,
        theta,
        y,
        l: v.l_word.into(),
        phi,
        residuals: v.residuals,
        elliptic: v.elliptic,
        reality: v.reality,
    })
}
