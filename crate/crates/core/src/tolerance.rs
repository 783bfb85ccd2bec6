use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by the solvers and certificate checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute bisection width on the independent variable.
    pub param: f64,
    /// Riley residual expected at solver output.
    pub residual: f64,
    /// `|-phi/theta - r|`.
    pub slope: f64,
    /// Frobenius norm of `rho(a w^p) - rho(w^p b)`.
    pub relation: f64,
    /// Agreement of closed-form and word-evaluated longitude eigenvalues.
    pub longitude: f64,
    /// Frobenius norm of `rho(mu^p lambda^q) - I`.
    pub peripheral: f64,
    /// `|M^p L^q - 1|`.
    pub eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            param: 1e-13,
            residual: 1e-10,
            slope: 1e-10,
            relation: 1e-8,
            longitude: 1e-7,
            peripheral: 1e-6,
            eigenvalue: 1e-9,
        }
    }
}
