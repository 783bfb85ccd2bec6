use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::branch::{BranchCurve, BranchPoint, Tracked};

/// One grid point of a branch sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeSample {
    pub param: f64,
    pub theta: f64,
    pub y: f64,
    pub x: f64,
    pub phi: f64,
    pub slope: f64,
    pub riley_residual: f64,
}

pub const MIN_GRID: usize = 16;

/// `size` Chebyshev nodes on `(lo, hi)`, increasing, clustered at both ends.
///
/// `margin` is the fraction of the interval width kept free at each end.
pub fn chebyshev_grid(lo: f64, hi: f64, size: usize, margin: f64) -> Vec<f64> {
    let width = hi - lo;
    let inner = (1.0 - 2.0 * margin).max(0.0);
    (0..size)
        .map(|i| {
            let u = 0.5 * (1.0 - (PI * (i as f64 + 0.5) / size as f64).cos());
            lo + width * (margin + inner * u)
        })
        .collect()
}

/// Computes the branch points in parallel, in the order given.
pub(crate) fn points(curve: &BranchCurve, params: &[f64]) -> Vec<Result<BranchPoint>> {
    params.par_iter().map(|&p| curve.point(p)).collect()
}

/// Tracks `phi` from the anchor through `params`, which must be ordered away from it.
pub(crate) fn track_points(curve: &BranchCurve, pts: Vec<BranchPoint>) -> Result<Vec<Tracked>> {
    let mut cur = curve.anchor_point()?;
    let mut out = Vec::with_capacity(pts.len());
    for pt in pts {
        cur = curve.advance(&cur, pt)?;
        out.push(cur);
    }
    Ok(out)
}

/// Samples `phi` and `-phi/theta` on a Chebyshev grid over the open branch domain.
pub fn sweep_branch(curve: &BranchCurve, grid_size: usize, margin: f64) -> Result<Vec<SlopeSample>> {
    if grid_size < MIN_GRID {
        return Err(Error::InvalidInput(format!(
            "grid size must be at least {MIN_GRID}, got {grid_size}"
        )));
    }
    if !(0.0..0.5).contains(&margin) {
        return Err(Error::InvalidInput(format!("margin must lie in [0, 0.5), got {margin}")));
    }
    let (lo, hi) = curve.domain();
    let mut params = chebyshev_grid(lo, hi, grid_size, margin);
    let from_top = curve.anchor() == hi;
    if from_top {
        params.reverse();
    }
    let pts = points(curve, &params).into_iter().collect::<Result<Vec<_>>>()?;
    let mut tracked = track_points(curve, pts)?;
    if from_top {
        tracked.reverse();
    }
    Ok(tracked
        .into_iter()
        .map(|t| SlopeSample {
            param: t.point.param,
            theta: t.point.theta,
            y: t.point.y,
            x: t.point.x,
            phi: t.phi,
            slope: t.slope(),
            riley_residual: curve.riley_residual(&t.point),
        })
        .collect())
}
