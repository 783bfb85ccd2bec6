use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::knot_words::{KnotSpec, Matrix2C};
use crate::representations::{
    closed_form_longitude, peripheral_ellipticity, sl2r_reality_check, Representation,
};
use crate::tolerance::Tolerances;

use super::branch::BranchId;
use super::rational::Slope;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    #[serde(with = "crate::format")]
    pub re: f64,
    #[serde(with = "crate::format")]
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|-phi/theta - r|`
    #[serde(with = "crate::format")]
    pub slope: f64,
    /// `||rho(a w^p) - rho(w^p b)||_F`
    #[serde(with = "crate::format")]
    pub relation: f64,
    /// `max(|L_closed - L_word|, |e^{i phi} - L_word|)`
    #[serde(with = "crate::format")]
    pub longitude_match: f64,
    /// `||rho(mu^p lambda^q) - I||_F`
    #[serde(with = "crate::format")]
    pub peripheral_kill: f64,
    /// `|M^p L^q - 1|` with the closed-form `L`.
    #[serde(with = "crate::format")]
    pub eigenvalue_kill: f64,
    /// `|R(4cos^2 theta, y)|`
    #[serde(with = "crate::format")]
    pub riley: f64,
}

impl Residuals {
    /// Names of the residuals that exceed their tolerance.
    pub fn failures(&self, tol: &Tolerances) -> Vec<&'static str> {
        let checks = [
            ("slope", self.slope, tol.slope),
            ("relation", self.relation, tol.relation),
            ("longitude_match", self.longitude_match, tol.longitude),
            ("peripheral_kill", self.peripheral_kill, tol.peripheral),
            ("eigenvalue_kill", self.eigenvalue_kill, tol.eigenvalue),
            ("riley", self.riley, tol.residual),
        ];
        checks
            .into_iter()
            // NaN fails.
            .filter(|&(_, v, t)| v.partial_cmp(&t) != Some(std::cmp::Ordering::Less))
            .map(|(name, _, _)| name)
            .collect()
    }
}

/// Witness that `r = p/q` is realized by an elliptic-peripheral representation
/// with `rho(mu^p lambda^q) = I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurgeryCertificate {
    pub schema_version: String,
    /// Conway notation, informational.
    pub knot: String,
    pub spec: KnotSpec,
    pub r: Slope,
    pub branch: BranchId,
    #[serde(with = "crate::format")]
    pub theta: f64,
    #[serde(with = "crate::format")]
    pub y: f64,
    #[serde(rename = "L")]
    pub l: ComplexValue,
    #[serde(with = "crate::format")]
    pub phi: f64,
    pub residuals: Residuals,
    pub elliptic: bool,
    pub reality: bool,
}

/// Everything recomputed from `(spec, r, theta, y, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub residuals: Residuals,
    pub l_word: Complex64,
    pub l_closed: Complex64,
    pub elliptic: bool,
    pub reality: bool,
    pub failures: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `rho(mu)^p rho(lambda)^q`.
pub fn peripheral_image(rep: &Representation, longitude: &Matrix2C, r: Slope) -> Matrix2C {
    rep.rho_a.powi(r.p()) * longitude.powi(r.q())
}

pub(crate) fn evaluate(
    spec: KnotSpec,
    r: Slope,
    theta: f64,
    y: f64,
    phi: f64,
    tol: &Tolerances,
) -> Verification {
    let rep = Representation::from_parts(spec, theta, y);
    let lam = rep.longitude_matrix();
    let l_word = lam.upper_left();
    let mut failures = Vec::new();
    let l_closed = match closed_form_longitude(&spec, rep.meridian, y) {
        Ok(l) => l,
        Err(e) => {
            failures.push(e.to_string());
            Complex64::new(f64::NAN, f64::NAN)
        }
    };
    let phase = Complex64::from_polar(1.0, phi);
    let kill = rep.meridian.powi(r.p() as i32) * l_closed.powi(r.q() as i32);
    let residuals = Residuals {
        slope: (-phi / theta - r.value()).abs(),
        relation: rep.relation_residual(),
        longitude_match: (l_closed - l_word).norm().max((phase - l_word).norm()),
        peripheral_kill: peripheral_image(&rep, &lam, r).distance(&Matrix2C::identity()),
        eigenvalue_kill: (kill - 1.0).norm(),
        riley: rep.riley_residual(),
    };
    let elliptic = peripheral_ellipticity(&rep, l_word).elliptic;
    let reality = sl2r_reality_check(&rep).real;
    failures.extend(residuals.failures(tol).into_iter().map(String::from));
    if !elliptic {
        failures.push("elliptic".into());
    }
    if !reality {
        failures.push("reality".into());
    }
    Verification {
        residuals,
        l_word,
        l_closed,
        elliptic,
        reality,
        failures,
    }
}

/// Rebuilds the matrices from the stored `(theta, y)` and rechecks every condition.
pub fn verify_certificate(cert: &SurgeryCertificate, tol: &Tolerances) -> Verification {
    let mut v = evaluate(cert.spec, cert.r, cert.theta, cert.y, cert.phi, tol);
    if cert.schema_version != SCHEMA_VERSION {
        v.failures.push(format!("schema_version {}", cert.schema_version));
    }
    if cert.branch.family != cert.spec.family {
        v.failures.push("branch family".into());
    }
    v
}

impl SurgeryCertificate {
    pub fn verify(&self, tol: &Tolerances) -> bool {
        verify_certificate(self, tol).passed()
    }
}
