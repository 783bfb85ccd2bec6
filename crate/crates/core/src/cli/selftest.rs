use std::fmt::Write as _;

use num_complex::Complex64;

use crate::chebyshev::cheb_pair;
use crate::error::Result;
use crate::knot_words::{Family, KnotSpec};
use crate::representations::{build_representation, longitude_eigenvalue, theta0, Representation};
use crate::riley::{find_y_star, riley_eval};
use crate::slopes::{
    lo_interval, solve_slope, sweep_branch, verify_certificate, Branch, BranchCurve, Slope,
    SolveConfig,
};
use crate::tolerance::Tolerances;

pub const SMOKE_KNOTS: [(u32, u32); 3] = [(1, 1), (1, 2), (2, 2)];
pub const DEFAULT_GRID: usize = 64;

/// One row of the selftest table.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub knot: String,
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(knot: &str, name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            knot: knot.to_string(),
            name,
            value,
            threshold,
            passed: value < threshold,
            detail: String::new(),
        }
    }

    fn from_result(knot: &str, name: &'static str, threshold: f64, value: Result<f64>) -> Self {
        match value {
            Ok(v) => Self::bound(knot, name, v, threshold),
            Err(e) => Self {
                detail: e.to_string(),
                ..Self::bound(knot, name, f64::NAN, threshold)
            },
        }
    }
}

/// Relative defect of `S_j^2 - v S_j S_{j-1} + S_{j-1}^2 = 1`.
fn chebyshev_defect() -> Result<f64> {
    let mut worst = 0.0f64;
    for j in -20..=20 {
        for i in 0..=40 {
            let v = Complex64::new(-3.0 + 0.15 * i as f64, 0.0);
            let p = cheb_pair(j, v)?;
            let scale = 1.0 + p.s_j.norm_sqr() + p.s_jm1.norm_sqr();
            worst = worst.max(p.identity_defect().norm() / scale);
        }
    }
    Ok(worst)
}

fn riley_anchor(spec: &KnotSpec) -> f64 {
    (0..=16)
        .map(|i| {
            let y = 2.0 + 0.25 * i as f64;
            (riley_eval(spec, y + 2.0, y) - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Representations sampled inside each branch domain.
fn curve_samples(spec: &KnotSpec, count: usize, tol: &Tolerances) -> Result<Vec<Representation>> {
    let mut reps = Vec::with_capacity(2 * count);
    match spec.family {
        Family::EvenMinus => {
            let t0 = theta0(spec.m, spec.n);
            for i in 1..=count {
                let th = t0 * i as f64 / (count + 1) as f64;
                reps.push(build_representation(*spec, th, tol.param)?);
                reps.push(build_representation(*spec, std::f64::consts::PI - th, tol.param)?);
            }
        }
        _ => {
            let ys = find_y_star(spec, tol.param)?;
            for i in 1..=count {
                let y = 2.0 + (ys - 2.0) * i as f64 / (count + 1) as f64;
                reps.push(Representation::odd(*spec, y, false, tol.param)?);
                reps.push(Representation::odd(*spec, y, true, tol.param)?);
            }
        }
    }
    Ok(reps)
}

fn curve_checks(label: &str, spec: &KnotSpec, tol: &Tolerances, grid: usize, out: &mut Vec<Check>) {
    let names = ["curve_riley", "curve_relation", "curve_longitude"];
    let thresholds = [tol.residual, tol.relation, tol.longitude];
    let reps = match curve_samples(spec, (grid / 4).max(4), tol) {
        Ok(reps) => reps,
        Err(e) => {
            for (name, t) in names.into_iter().zip(thresholds) {
                out.push(Check::from_result(label, name, t, Err(e.clone())));
            }
            return;
        }
    };
    let riley = reps.iter().map(Representation::riley_residual).fold(0.0, f64::max);
    let relation = reps.iter().map(Representation::relation_residual).fold(0.0, f64::max);
    let longitude = reps.iter().try_fold(0.0f64, |acc, rep| {
        longitude_eigenvalue(spec, rep.meridian, rep.y).map(|l| acc.max(l.mismatch()))
    });
    out.push(Check::bound(label, names[0], riley, thresholds[0]));
    out.push(Check::bound(label, names[1], relation, thresholds[1]));
    out.push(Check::from_result(label, names[2], thresholds[2], longitude));
}

/// Largest Riley residual on the sweep, and the number of slopes outside the covered interval.
fn sweep_stats(spec: &KnotSpec, branch: Branch, tol: &Tolerances, grid: usize) -> Result<(f64, f64)> {
    let curve = BranchCurve::new(*spec, branch, tol.param)?;
    let samples = sweep_branch(&curve, grid, 0.0)?;
    let interval = lo_interval(spec)?;
    let residual = samples.iter().map(|s| s.riley_residual).fold(0.0, f64::max);
    let outside = samples.iter().filter(|s| !interval.contains(s.slope)).count();
    Ok((residual, outside as f64))
}

fn sweep_checks(label: &str, spec: &KnotSpec, tol: &Tolerances, grid: usize, out: &mut Vec<Check>) {
    for branch in Branch::all_for(spec.family) {
        let (name_res, name_out) = match branch {
            Branch::EvenLow => ("sweep_even_low_riley", "sweep_even_low_in_interval"),
            Branch::EvenHigh => ("sweep_even_high_riley", "sweep_even_high_in_interval"),
            Branch::OddPrimary => ("sweep_odd_primary_riley", "sweep_odd_primary_in_interval"),
            Branch::OddReflected => ("sweep_odd_reflected_riley", "sweep_odd_reflected_in_interval"),
        };
        match sweep_stats(spec, branch, tol, grid) {
            Ok((res, outside)) => {
                out.push(Check::bound(label, name_res, res, tol.residual));
                out.push(Check::bound(label, name_out, outside, 0.5));
            }
            Err(e) => {
                out.push(Check::from_result(label, name_res, tol.residual, Err(e.clone())));
                out.push(Check::from_result(label, name_out, 0.5, Err(e)));
            }
        }
    }
}

/// Certifies `r = -1/2` and `r = 1/2`; the value is the number of failed residuals.
fn certificate_checks(label: &str, spec: &KnotSpec, tol: &Tolerances, out: &mut Vec<Check>) {
    let cfg = SolveConfig { tol: *tol, ..SolveConfig::default() };
    for (name, p) in [("certify_minus_half", -1), ("certify_plus_half", 1)] {
        let result = Slope::new(p, 2)
            .and_then(|r| solve_slope(spec, r, &cfg))
            .map(|cert| verify_certificate(&cert, tol));
        let check = match result {
            Ok(v) => Check {
                detail: v.failures.join(", "),
                ..Check::bound(label, name, v.failures.len() as f64, 0.5)
            },
            Err(e) => Check::from_result(label, name, 0.5, Err(e)),
        };
        out.push(check);
    }
}

/// All checks over the three families at each of [`SMOKE_KNOTS`].
pub fn run_selftest(tol: &Tolerances, grid: usize) -> Vec<Check> {
    let grid = grid.max(crate::slopes::MIN_GRID);
    let mut out = vec![Check::from_result("-", "chebyshev_identity", tol.residual, chebyshev_defect())];
    for (m, n) in SMOKE_KNOTS {
        for family in [Family::EvenMinus, Family::OddPlus, Family::OddMinus] {
            let spec = match KnotSpec::new(family, m, n) {
                Ok(spec) => spec,
                Err(e) => {
                    out.push(Check::from_result(&format!("{family:?}({m},{n})"), "construct", 0.5, Err(e)));
                    continue;
                }
            };
            let label = spec.to_string();
            out.push(Check::bound(&label, "riley_anchor", riley_anchor(&spec), tol.residual));
            if !spec.supports_slopes() {
                continue;
            }
            curve_checks(&label, &spec, tol, grid, &mut out);
            sweep_checks(&label, &spec, tol, grid, &mut out);
            certificate_checks(&label, &spec, tol, &mut out);
        }
    }
    out
}

pub fn render_table(checks: &[Check]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<10} {:<32} {:>24} {:>24}  result", "knot", "check", "value", "threshold");
    for c in checks {
        let _ = write!(
            s,
            "{:<10} {:<32} {:>24} {:>24}  {}",
            c.knot,
            c.name,
            crate::format::sig17(c.value),
            format!("{:e}", c.threshold),
            if c.passed { "pass" } else { "FAIL" }
        );
        if !c.detail.is_empty() {
            let _ = write!(s, "  ({})", c.detail);
        }
        s.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", checks.len(), failed);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_knots_pass_with_defaults() {
        let checks = run_selftest(&Tolerances::default(), 32);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{}", render_table(&checks));
    }

    #[test]
    fn tiny_residual_tolerance_fails() {
        let tol = Tolerances { residual: 1e-30, ..Tolerances::default() };
        assert!(run_selftest(&tol, 16).iter().any(|c| !c.passed));
    }
}
