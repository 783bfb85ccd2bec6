//! Explicit representations at curve points, the longitude eigenvalue by two
//! independent routes, and the reality/ellipticity conditions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::s;
use crate::error::{ensure_finite, Error, Result};
use crate::knot_words::{
    build_presentation, evaluate_word, meridian_images, relation_residual, Family, KnotSpec,
    Matrix2C,
};
use crate::riley::{riley_eval, solve_x_of_y, solve_y_of_x};

/// `theta_0 = arccos sqrt(1 - 1/(4mn))`; the even branches live on
/// `(0, theta_0)` and `(pi - theta_0, pi)`.
pub fn theta0(m: u32, n: u32) -> f64 {
    (1.0 - 1.0 / (4.0 * m as f64 * n as f64)).sqrt().acos()
}

/// Meridian angle in `[0, pi/2]` with `4cos^2(theta) = x`, accurate near both ends.
pub fn theta_from_x(x: f64) -> f64 {
    (4.0 - x).max(0.0).sqrt().atan2(x.max(0.0).sqrt())
}

/// A non-abelian representation with `rho(a)` upper and `rho(b)` lower triangular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub spec: KnotSpec,
    /// Meridian angle; `M = e^{i theta}`.
    pub theta: f64,
    pub meridian: Complex64,
    pub y: f64,
    /// `(M + 1/M)^2 = 4cos^2(theta)`.
    pub x: f64,
    pub rho_a: Matrix2C,
    pub rho_b: Matrix2C,
}

impl Representation {
    /// Matrices at `(theta, y)` with no curve condition imposed.
    pub fn from_parts(spec: KnotSpec, theta: f64, y: f64) -> Self {
        let meridian = Complex64::from_polar(1.0, theta);
        let (rho_a, rho_b) = meridian_images(meridian, y);
        let c = theta.cos();
        Self {
            spec,
            theta,
            meridian,
            y,
            x: 4.0 * c * c,
            rho_a,
            rho_b,
        }
    }

    /// Point of the odd-family curve above `y`: `theta(y)`, or `pi - theta(y)` when reflected.
    pub fn odd(spec: KnotSpec, y: f64, reflected: bool, tol: f64) -> Result<Self> {
        let x = solve_x_of_y(&spec, y, tol)?;
        if x > 4.0 {
            return Err(Error::Domain {
                what: "y",
                value: y,
                admissible: format!("[2, y*] where x(y*) = 4 for {spec}"),
            });
        }
        let theta = theta_from_x(x);
        let theta = if reflected { PI - theta } else { theta };
        Ok(Self::from_parts(spec, theta, y))
    }

    pub fn relation_residual(&self) -> f64 {
        relation_residual(&self.spec, &self.rho_a, &self.rho_b)
    }

    pub fn riley_residual(&self) -> f64 {
        riley_eval(&self.spec, self.x, self.y).abs()
    }

    /// `rho(lambda)` from the longitude word.
    pub fn longitude_matrix(&self) -> Matrix2C {
        let pres = build_presentation(&self.spec);
        evaluate_word(&pres.longitude, &self.rho_a, &self.rho_b)
    }
}

/// Representation for `C(2m,-2n)` at meridian angle `theta`, with `y = y(4cos^2 theta)`.
pub fn build_representation(spec: KnotSpec, theta: f64, tol: f64) -> Result<Representation> {
    ensure_finite("theta", theta)?;
    if spec.family != Family::EvenMinus {
        return Err(Error::UnsupportedFamily(format!(
            "{spec}: odd families are parametrized by y, use Representation::odd"
        )));
    }
    let t0 = theta0(spec.m, spec.n);
    let admissible = (theta > 0.0 && theta <= t0) || (theta >= PI - t0 && theta < PI);
    if !admissible {
        return Err(Error::Domain {
            what: "theta",
            value: theta,
            admissible: format!("(0, {t0}] U [{}, pi)", PI - t0),
        });
    }
    let c = theta.cos();
    let x = (4.0 * c * c).max(crate::riley::even_x_min(spec.m, spec.n));
    let y = solve_y_of_x(spec.m, spec.n, x, tol)?;
    Ok(Representation::from_parts(spec, theta, y))
}

/// The longitude eigenvalue by closed form and by word evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongitudeReport {
    pub l_closed: Complex64,
    /// Upper-left entry of the evaluated longitude.
    pub l_word: Complex64,
    /// `|lower-left entry|` of the evaluated longitude.
    pub lower_left: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl LongitudeReport {
    pub fn mismatch(&self) -> f64 {
        (self.l_closed - self.l_word).norm()
    }
}

const SINGULAR_DENOMINATOR: f64 = 1e-14;

fn quotient(m: Complex64, u: f64, v: f64) -> Result<Complex64> {
    let den = m * u - m.inv() * v;
    if den.norm() < SINGULAR_DENOMINATOR {
        return Err(Error::Singularity(den.norm()));
    }
    Ok(-(m.inv() * u - m * v) / den)
}

/// Closed-form longitude eigenvalue `L(M, y)`.
pub fn closed_form_longitude(spec: &KnotSpec, m: Complex64, y: f64) -> Result<Complex64> {
    let k = spec.m();
    let (s_m, s_m1) = (s(k, y), s(k - 1, y));
    match spec.family {
        Family::EvenMinus => quotient(m, s_m - s_m1, s_m1 - s(k - 2, y)),
        Family::OddPlus | Family::OddMinus => {
            let power = 4 * spec.twist_p();
            Ok(m.powi(power as i32) * quotient(m, s_m, s_m1)?)
        }
    }
}

pub fn longitude_eigenvalue(spec: &KnotSpec, m: Complex64, y: f64) -> Result<LongitudeReport> {
    ensure_finite("y", y)?;
    if y < 2.0 {
        return Err(Error::Domain {
            what: "y",
            value: y,
            admissible: "[2, inf)".into(),
        });
    }
    if (m.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("|M| must be 1, got {}", m.norm())));
    }
    let l_closed = closed_form_longitude(spec, m, y)?;
    let (rho_a, rho_b) = meridian_images(m, y);
    let lam = evaluate_word(&build_presentation(spec).longitude, &rho_a, &rho_b);
    let k = spec.m();
    Ok(LongitudeReport {
        l_closed,
        l_word: lam.upper_left(),
        lower_left: lam.lower_left().norm(),
        alpha: s(k, y) - s(k - 1, y),
        beta: s(k - 1, y) - s(k - 2, y),
        gamma: s(k, y),
        delta: s(k - 1, y),
    })
}

/// `true` iff `tr` is real within `1e-9` and strictly inside `(-2, 2)`.
pub fn is_elliptic_trace(tr: Complex64) -> bool {
    tr.im.abs() < 1e-9 && tr.re > -2.0 && tr.re < 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticityReport {
    pub meridian_trace: Complex64,
    pub longitude_trace: Complex64,
    /// `||rho(mu) rho(lambda) - rho(lambda) rho(mu)||_F`.
    pub commutator: f64,
    pub elliptic: bool,
}

const COMMUTATOR_TOL: f64 = 1e-8;

pub fn peripheral_ellipticity(rep: &Representation, l: Complex64) -> EllipticityReport {
    let meridian_trace = rep.rho_a.trace();
    let longitude_trace = l + l.inv();
    let lam = rep.longitude_matrix();
    let commutator = (rep.rho_a * lam).distance(&(lam * rep.rho_a));
    EllipticityReport {
        meridian_trace,
        longitude_trace,
        commutator,
        elliptic: is_elliptic_trace(meridian_trace)
            && is_elliptic_trace(longitude_trace)
            && commutator < COMMUTATOR_TOL,
    }
}

/// Necessary conditions for conjugating `rho` into `SL_2(R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealityReport {
    pub y_above_two: bool,
    /// `tr rho(a)`, `tr rho(b)`, `tr rho(ab)`.
    pub traces: [Complex64; 3],
    pub real: bool,
}

pub fn sl2r_reality_check(rep: &Representation) -> RealityReport {
    let traces = [
        rep.rho_a.trace(),
        rep.rho_b.trace(),
        (rep.rho_a * rep.rho_b).trace(),
    ];
    let y_above_two = rep.y > 2.0;
    RealityReport {
        y_above_two,
        traces,
        real: y_above_two && traces.iter().all(|t| t.im.abs() < 1e-9),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riley::{find_y_star, tz_eval};

    const TOL: f64 = 1e-13;

    #[test]
    fn theta0_trefoil() {
        assert!((theta0(1, 1) - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn even_representation_approaches_reducible_limit() {
        let spec = KnotSpec::even_minus(1, 1).unwrap();
        let t0 = theta0(1, 1);
        let ys: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|d| build_representation(spec, t0 - d, TOL).unwrap().y)
            .collect();
        assert!(ys[0] > ys[1] && ys[1] > ys[2] && ys[2] > 2.0);
        assert!(ys[2] - 2.0 < 1e-3);
    }

    #[test]
    fn even_representation_domain() {
        let spec = KnotSpec::even_minus(1, 1).unwrap();
        match build_representation(spec, 1.0, TOL) {
            Err(Error::Domain { admissible, .. }) => assert!(admissible.contains("U")),
            other => panic!("{other:?}"),
        }
        assert!(build_representation(spec, 0.0, TOL).is_err());
        assert!(build_representation(KnotSpec::odd_plus(1, 1).unwrap(), 0.2, TOL).is_err());
    }

    #[test]
    fn odd_plus_closed_form_point() {
        let spec = KnotSpec::odd_plus(1, 1).unwrap();
        let rep = Representation::odd(spec, 2.0, false, TOL).unwrap();
        assert!((rep.x - 3.5).abs() < 1e-12);
        assert!((rep.theta - (3.5f64.sqrt() / 2.0).acos()).abs() < 1e-12);
        let refl = Representation::odd(spec, 2.0, true, TOL).unwrap();
        assert!((refl.theta + rep.theta - PI).abs() < 1e-15);
        let ys = find_y_star(&spec, TOL).unwrap();
        assert!(Representation::odd(spec, ys + 0.1, false, TOL).is_err());
    }

    #[test]
    fn longitude_routes_agree_on_curve() {
        for spec in [
            KnotSpec::even_minus(2, 1).unwrap(),
            KnotSpec::odd_plus(1, 2).unwrap(),
            KnotSpec::odd_minus(2, 2).unwrap(),
        ] {
            let rep = if spec.family.is_odd() {
                Representation::odd(spec, 2.2, false, TOL).unwrap()
            } else {
                build_representation(spec, 0.2, TOL).unwrap()
            };
            assert!(rep.relation_residual() < 1e-8);
            assert!(rep.riley_residual() < 1e-9);
            let w = evaluate_word(&build_presentation(&spec).w, &rep.rho_a, &rep.rho_b);
            assert!((w.trace().re - tz_eval(&spec, rep.x, rep.y).0).abs() < 1e-9);
            let report = longitude_eigenvalue(&spec, rep.meridian, rep.y).unwrap();
            assert!(report.mismatch() < 1e-7, "{spec}: {report:?}");
            assert!(report.lower_left < 1e-7);
            assert!((report.l_closed.norm() - 1.0).abs() < 1e-10);
            assert!(report.alpha > report.beta && report.beta > 0.0);
            assert!(report.gamma > report.delta && report.delta > 0.0);
        }
    }

    #[test]
    fn even_longitude_limits() {
        let spec = KnotSpec::even_minus(1, 1).unwrap();
        // alpha = beta = 1 at y = 2.
        let l = closed_form_longitude(&spec, Complex64::from_polar(1.0, 0.4), 2.0).unwrap();
        assert!((l - 1.0).norm() < 1e-14);
        let dist: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&d| {
                let rep = build_representation(spec, d, TOL).unwrap();
                (closed_form_longitude(&spec, rep.meridian, rep.y).unwrap() + 1.0).norm()
            })
            .collect();
        assert!(dist[0] > dist[1] && dist[1] > dist[2] && dist[2] < 1e-3);
    }

    #[test]
    fn even_re_im_formulas() {
        let spec = KnotSpec::even_minus(2, 3).unwrap();
        for theta in [0.05, 0.1, 0.15] {
            let rep = build_representation(spec, theta, TOL).unwrap();
            let r = longitude_eigenvalue(&spec, rep.meridian, rep.y).unwrap();
            let (a, b) = (r.alpha, r.beta);
            let den = (rep.meridian * a - rep.meridian.inv() * b).norm_sqr();
            let re = (2.0 * a * b - (a * a + b * b) * (2.0 * theta).cos()) / den;
            let im = (a * a - b * b) * (2.0 * theta).sin() / den;
            assert!((r.l_closed.re - re).abs() < 1e-10 && (r.l_closed.im - im).abs() < 1e-10);
        }
    }

    #[test]
    fn singular_guard() {
        // M = 1 and alpha = beta makes the even denominator vanish.
        let spec = KnotSpec::even_minus(1, 1).unwrap();
        assert!(matches!(
            closed_form_longitude(&spec, Complex64::new(1.0, 0.0), 2.0),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn ellipticity_and_reality() {
        let theta = PI / 4.0;
        assert!(is_elliptic_trace(Complex64::new(2.0 * theta.cos(), 0.0)));
        let i = Complex64::new(0.0, 1.0);
        assert!(is_elliptic_trace(i + i.inv()));
        let one = Complex64::new(1.0, 0.0);
        assert!(!is_elliptic_trace(one + one.inv()));

        let spec = KnotSpec::odd_minus(1, 2).unwrap();
        let rep = Representation::odd(spec, 2.3, true, TOL).unwrap();
        let l = longitude_eigenvalue(&spec, rep.meridian, rep.y).unwrap().l_closed;
        assert!(peripheral_ellipticity(&rep, l).elliptic);
        assert!(!peripheral_ellipticity(&rep, one).elliptic);
        assert!(sl2r_reality_check(&rep).real);
        let flat = Representation::odd(spec, 2.0, false, TOL).unwrap();
        assert!(!sl2r_reality_check(&flat).real);
    }
}
