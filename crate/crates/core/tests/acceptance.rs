//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! line; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use ordslope::chebyshev::{cheb_pair, product_form, s, ProductForm};
use ordslope::knot_words::{base_word, evaluate_word};
use ordslope::representations::{build_representation, longitude_eigenvalue, theta0, Representation};
use ordslope::riley::{find_y_star, p_eval, riley_eval, solve_x_of_y, solve_y_of_x, tz_eval};
use ordslope::slopes::{
    solve_slope, sweep_branch, verify_certificate, Branch, BranchCurve, Slope, SolveConfig,
    SurgeryCertificate,
};
use ordslope::{Error, Family, KnotSpec, Tolerances};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn knot(family: Family, m: u32, n: u32) -> KnotSpec {
    KnotSpec::new(family, m, n).unwrap()
}

/// Sixteen-bit LCG, enough to spread points on the unit circle reproducibly.
fn unit_circle(count: usize) -> Vec<Complex64> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..count)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            Complex64::from_polar(1.0, 2.0 * PI * u)
        })
        .collect()
}

/// Defect of `S_j^2 - v S_j S_{j-1} + S_{j-1}^2 = 1`: absolute where the values are
/// bounded (real `|v| <= 2`), otherwise relative to the size of the terms.
fn cheb_suite() -> Outcome {
    let start = Instant::now();
    let reals: Vec<f64> = (0..=120).map(|i| -3.0 + 0.05 * i as f64).collect();
    let mut args: Vec<Complex64> = reals.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    args.extend(unit_circle(1000));
    let mut worst = 0.0f64;
    for &v in &args {
        for j in -60..=60 {
            let p = cheb_pair(j, v).map_err(|e| e.to_string())?;
            let scale = if v.im == 0.0 && v.re.abs() <= 2.0 {
                1.0
            } else {
                1.0 + p.s_j.norm_sqr() + v.norm() * p.s_j.norm() * p.s_jm1.norm() + p.s_jm1.norm_sqr()
            };
            worst = worst.max(p.identity_defect().norm() / scale);
        }
    }
    ensure(worst < 1e-10, || format!("identity defect {worst:e}"))?;

    let mut worst_prod = 0.0f64;
    for &v in &reals {
        for n in 1..=60i64 {
            let (sn, snm1) = (s(n, v), s(n - 1, v));
            for (form, want) in [
                (ProductForm::Minus, sn - snm1),
                (ProductForm::Plus, sn + snm1),
                (ProductForm::Plain, sn),
            ] {
                let got = product_form(n, form, v).map_err(|e| e.to_string())?;
                let scale = if v.abs() <= 2.0 { 1.0 } else { 1.0 + sn.abs() + snm1.abs() };
                worst_prod = worst_prod.max((got - want).abs() / scale);
            }
        }
    }
    ensure(worst_prod < 1e-10, || format!("product form defect {worst_prod:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("identity {worst:.1e}, products {worst_prod:.1e}, {elapsed:.2?}"))
}

fn riley_anchors() -> Outcome {
    let mut anchor = 0.0f64;
    let mut p_two = 0.0f64;
    let mut y_two = 0.0f64;
    for m in 1..=4u32 {
        for n in 1..=4u32 {
            for family in [Family::EvenMinus, Family::OddPlus, Family::OddMinus] {
                let spec = knot(family, m, n);
                for i in 0..=40 {
                    let y = 2.0 + 0.1 * i as f64;
                    anchor = anchor.max((riley_eval(&spec, y + 2.0, y) - 1.0).abs());
                }
            }
            let mn = (m * n) as f64;
            for i in 0..=40 {
                let x = 3.0 + 0.025 * i as f64;
                let want = (4.0 - x).powi(2) * mn * mn - 1.0;
                p_two = p_two.max((p_eval(m, n, x, 2.0) - want).abs());
            }
            let y = solve_y_of_x(m, n, 4.0 - 1.0 / mn, 1e-13).map_err(|e| e.to_string())?;
            y_two = y_two.max((y - 2.0).abs());
        }
    }
    ensure(anchor < 1e-12, || format!("R(y+2,y) defect {anchor:e}"))?;
    ensure(p_two < 1e-12, || format!("P(x,2) defect {p_two:e}"))?;
    ensure(y_two < 1e-8, || format!("y(4-1/(mn)) off by {y_two:e}"))?;
    Ok(format!("R(y+2,y) {anchor:.1e}, P(x,2) {p_two:.1e}, y(4-1/mn) {y_two:.1e}"))
}

fn closed_forms() -> Outcome {
    let y = solve_y_of_x(1, 1, 4.0, 1e-13).map_err(|e| e.to_string())?;
    ensure((y - 3.0).abs() < 1e-10, || format!("y(4) = {y}"))?;
    let x = solve_x_of_y(&knot(Family::OddPlus, 1, 1), 2.0, 1e-13).map_err(|e| e.to_string())?;
    ensure((x - 3.5).abs() < 1e-10, || format!("x(2) = {x}"))?;
    Ok(format!("y(4) - 3 = {:.1e}, x(2) - 3.5 = {:.1e}", y - 3.0, x - 3.5))
}

/// 50 points on each of the two branches of `spec`.
fn sample_curve(spec: &KnotSpec) -> Result<Vec<Representation>, Error> {
    let mut reps = Vec::with_capacity(100);
    if spec.family == Family::EvenMinus {
        let t0 = theta0(spec.m, spec.n);
        for i in 1..=50 {
            let th = t0 * i as f64 / 51.0;
            reps.push(build_representation(*spec, th, 1e-13)?);
            reps.push(build_representation(*spec, PI - th, 1e-13)?);
        }
    } else {
        let ys = find_y_star(spec, 1e-13)?;
        for i in 1..=50 {
            let y = 2.0 + (ys - 2.0) * i as f64 / 51.0;
            reps.push(Representation::odd(*spec, y, false, 1e-13)?);
            reps.push(Representation::odd(*spec, y, true, 1e-13)?);
        }
    }
    Ok(reps)
}

fn representation_consistency() -> Outcome {
    let start = Instant::now();
    let (mut rel, mut trace, mut lower, mut mismatch, mut modulus) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut count = 0;
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            for family in [Family::EvenMinus, Family::OddPlus, Family::OddMinus] {
                if family == Family::OddMinus && n < 2 {
                    continue;
                }
                let spec = knot(family, m, n);
                let w = base_word(&spec);
                for rep in sample_curve(&spec).map_err(|e| format!("{spec}: {e}"))? {
                    rel = rel.max(rep.relation_residual());
                    let (t, _) = tz_eval(&spec, rep.x, rep.y);
                    let tr = evaluate_word(&w, &rep.rho_a, &rep.rho_b).trace();
                    trace = trace.max((tr - t).norm());
                    let l = longitude_eigenvalue(&spec, rep.meridian, rep.y).map_err(|e| e.to_string())?;
                    lower = lower.max(l.lower_left.abs());
                    mismatch = mismatch.max(l.mismatch());
                    modulus = modulus.max((l.l_closed.norm() - 1.0).abs());
                    count += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(rel < 1e-8, || format!("relation {rel:e}"))?;
    ensure(trace < 1e-9, || format!("trace {trace:e}"))?;
    ensure(lower < 1e-7, || format!("longitude lower-left {lower:e}"))?;
    ensure(mismatch < 1e-7, || format!("L mismatch {mismatch:e}"))?;
    ensure(modulus < 1e-10, || format!("|L| - 1 = {modulus:e}"))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{count} points: relation {rel:.1e}, trace {trace:.1e}, lower-left {lower:.1e}, L {mismatch:.1e}, |L| {modulus:.1e}, {elapsed:.2?}"
    ))
}

fn bound_checks() -> Outcome {
    let x_bound = |j: i64, n: u32| {
        let c = (j as f64 * PI / (4 * n + 2) as f64).cos();
        4.0 * c * c
    };
    let mut points = 0;
    for m in 1..=4u32 {
        for n in 1..=4u32 {
            for family in [Family::OddPlus, Family::OddMinus] {
                if family == Family::OddMinus && n < 2 {
                    continue;
                }
                let spec = knot(family, m, n);
                let upper = match family {
                    Family::OddPlus => x_bound(2 * n as i64 - 2, n),
                    _ => x_bound(2 * n as i64 - 3, n),
                };
                let lower = x_bound(2 * n as i64 - 1, n);
                let x2 = solve_x_of_y(&spec, 2.0, 1e-13).map_err(|e| e.to_string())?;
                ensure(x2 < upper, || format!("{spec}: x(2) = {x2} >= {upper}"))?;
                let ys = find_y_star(&spec, 1e-13).map_err(|e| e.to_string())?;
                for i in 0..200 {
                    let y = 2.0 + (ys - 2.0) * i as f64 / 200.0;
                    let x = solve_x_of_y(&spec, y, 1e-13).map_err(|e| e.to_string())?;
                    ensure(x > lower, || format!("{spec}: x({y}) = {x} <= {lower}"))?;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("x(2) upper bounds and {points} lower-bound points hold"))
}

fn slope_range(spec: &KnotSpec, branch: Branch) -> Result<(f64, f64), String> {
    let curve = BranchCurve::new(*spec, branch, 1e-13).map_err(|e| e.to_string())?;
    let samples = sweep_branch(&curve, 4096, 0.0).map_err(|e| format!("{spec} {branch}: {e}"))?;
    Ok(samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
        (lo.min(s.slope), hi.max(s.slope))
    }))
}

fn branch_ranges() -> Outcome {
    let mut report = Vec::new();
    let trefoil = knot(Family::EvenMinus, 1, 1);
    let (lo, _) = slope_range(&trefoil, Branch::EvenLow)?;
    ensure(lo <= -50.0, || format!("trefoil even_low reaches only {lo}"))?;
    let (_, hi) = slope_range(&trefoil, Branch::EvenHigh)?;
    ensure(hi >= 0.95, || format!("trefoil even_high reaches only {hi}"))?;
    report.push(format!("trefoil <= {lo:.3e}, >= {hi:.4}"));
    for (m, n) in [(1, 2), (2, 2)] {
        let spec = knot(Family::OddPlus, m, n);
        let (lo, hi) = slope_range(&spec, Branch::OddReflected)?;
        let top = (2 * n - 1) as f64;
        ensure(lo < 0.05 && hi > top - 0.05 && lo > 0.0 && hi < top, || {
            format!("{spec} odd_reflected spans ({lo}, {hi})")
        })?;
        report.push(format!("{spec} ({lo:.3}, {hi:.3})"));
    }
    let spec = knot(Family::OddMinus, 1, 2);
    let (_, hi) = slope_range(&spec, Branch::OddPrimary)?;
    ensure(hi >= 50.0, || format!("{spec} odd_primary reaches only {hi}"))?;
    let (lo, top) = slope_range(&spec, Branch::OddReflected)?;
    let floor = -((2 * spec.n - 3) as f64);
    ensure(lo < floor + 0.05 && top > -0.05 && lo > floor && top < 0.0, || {
        format!("{spec} odd_reflected spans ({lo}, {top})")
    })?;
    report.push(format!("{spec} primary >= {hi:.3e}, reflected ({lo:.3}, {top:.3})"));
    Ok(report.join("; "))
}

fn certificate_cases() -> Vec<(KnotSpec, Vec<(i64, i64)>)> {
    vec![
        (knot(Family::EvenMinus, 1, 1), vec![(-1, 2), (7, 9), (-25, 1), (1, 3), (-7, 2)]),
        (knot(Family::EvenMinus, 2, 2), vec![(-7, 2), (-1, 9), (7, 9), (-25, 1), (1, 3)]),
        (knot(Family::OddPlus, 1, 2), vec![(-25, 1), (5, 2), (7, 9), (-11, 8), (29, 10)]),
        (knot(Family::OddPlus, 2, 2), vec![(-25, 1), (5, 2), (7, 9), (-11, 8), (2, 1)]),
        (knot(Family::OddMinus, 1, 2), vec![(100, 1), (25, 1), (-7, 9), (1, 2), (-1, 3)]),
        (knot(Family::OddMinus, 2, 3), vec![(40, 1), (-5, 2), (8, 7), (-7, 9), (-29, 10)]),
    ]
}

fn end_to_end(certs: &mut Vec<SurgeryCertificate>) -> Outcome {
    let tol = Tolerances::default();
    let cfg = SolveConfig::default();
    let (mut worst_kill, mut worst_eig, mut slowest) = (0.0f64, 0.0f64, Duration::ZERO);
    for (spec, slopes) in certificate_cases() {
        let rs: Vec<Slope> = slopes.iter().map(|&(p, q)| Slope::new(p, q).unwrap()).collect();
        ensure(rs.iter().any(|r| r.p().abs() >= 7 && r.q().abs() >= 7), || format!("{spec}: no |p|,|q| >= 7"))?;
        ensure(rs.iter().any(|r| r.value().abs() >= 20.0), || format!("{spec}: no |r| >= 20"))?;
        for r in rs {
            let start = Instant::now();
            let cert = solve_slope(&spec, r, &cfg).map_err(|e| format!("{spec} r = {r}: {e}"))?;
            let check = verify_certificate(&cert, &tol);
            let elapsed = start.elapsed();
            ensure(check.passed(), || format!("{spec} r = {r}: {:?}", check.failures))?;
            let res = check.residuals;
            ensure(res.peripheral_kill < 1e-6 && res.eigenvalue_kill < 1e-9, || {
                format!("{spec} r = {r}: kill {:e}, eigenvalue {:e}", res.peripheral_kill, res.eigenvalue_kill)
            })?;
            ensure(elapsed < Duration::from_secs(2), || format!("{spec} r = {r} took {elapsed:?}"))?;
            worst_kill = worst_kill.max(res.peripheral_kill);
            worst_eig = worst_eig.max(res.eigenvalue_kill);
            slowest = slowest.max(elapsed);
            certs.push(cert);
        }
    }
    Ok(format!(
        "{} certificates verified, peripheral {worst_kill:.1e}, eigenvalue {worst_eig:.1e}, slowest {slowest:.2?}",
        certs.len()
    ))
}

fn negative_controls() -> Outcome {
    let cfg = SolveConfig::default();
    let trefoil = knot(Family::EvenMinus, 1, 1);
    let c34 = knot(Family::OddMinus, 1, 2);
    let not_covered = |spec: &KnotSpec, p: i64| {
        matches!(solve_slope(spec, Slope::new(p, 1).unwrap(), &cfg), Err(Error::SlopeNotCovered { .. }))
    };
    ensure(not_covered(&trefoil, 2), || "r = 2 accepted for C(2,-2)".into())?;
    ensure(not_covered(&c34, -2), || "r = -2 accepted for C(3,-4)".into())?;
    match solve_slope(&trefoil, Slope::new(0, 1).unwrap(), &cfg) {
        Err(e @ Error::ZeroSlope) => ensure(e.to_string().contains("0-surgery"), || e.to_string())?,
        other => return Err(format!("r = 0 gave {other:?}")),
    }
    let cli = |knot: &str, slope: &str| {
        Command::new(env!("CARGO_BIN_EXE_ordslope"))
            .args(["certify", "--knot", knot, "--slope", slope])
            .output()
            .map_err(|e| e.to_string())
    };
    for (k, r) in [("C(2,-2)", "2"), ("C(3,-4)", "-2"), ("C(2,-2)", "0")] {
        let out = cli(k, r)?;
        ensure(out.status.code() == Some(2), || format!("{k} r = {r}: exit {:?}", out.status.code()))?;
    }
    let out = cli("C(2,-2)", "0")?;
    let msg = String::from_utf8_lossy(&out.stderr);
    ensure(msg.contains("out of scope"), || format!("r = 0 message: {msg}"))?;
    Ok("slope-not-covered for 2 on C(2,-2) and -2 on C(3,-4); r = 0 rejected as out of scope; CLI exit 2".into())
}

fn perturbation(certs: &[SurgeryCertificate]) -> Outcome {
    ensure(!certs.is_empty(), || "no certificates to perturb".into())?;
    let tol = Tolerances::default();
    let mut smallest = f64::INFINITY;
    for cert in certs {
        for delta in [1e-3, -1e-3] {
            let mut bad = cert.clone();
            bad.theta += delta;
            let check = verify_certificate(&bad, &tol);
            ensure(check.failures.iter().any(|f| f == "peripheral_kill"), || {
                format!("{} r = {} theta {delta:+e}: failures {:?}", cert.knot, cert.r, check.failures)
            })?;
            smallest = smallest.min(check.residuals.peripheral_kill);
        }
    }
    Ok(format!("{} perturbed certificates rejected, smallest peripheral_kill {smallest:.1e}", 2 * certs.len()))
}

fn main() -> ExitCode {
    let mut certs = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("chebyshev suite", cheb_suite()),
        ("riley anchors", riley_anchors()),
        ("closed-form oracle", closed_forms()),
        ("representation consistency", representation_consistency()),
        ("bound checks", bound_checks()),
        ("branch ranges", branch_ranges()),
        ("end-to-end certificates", end_to_end(&mut certs)),
        ("negative controls", negative_controls()),
        ("perturbation sensitivity", perturbation(&certs)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
