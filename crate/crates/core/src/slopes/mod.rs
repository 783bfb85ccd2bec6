//! Longitude arguments along the elliptic branches, slope functions `-phi/theta`,
//! and surgery certificates.

mod branch;
mod certificate;
mod rational;
mod solve;
mod sweep;

pub use branch::{Branch, BranchCurve, BranchId, BranchPoint, Tracked};
pub use certificate::{
    peripheral_image, verify_certificate, ComplexValue, Residuals, SurgeryCertificate,
    Verification, SCHEMA_VERSION,
};
pub use rational::{check_covered, lo_interval, OpenInterval, Slope, SLOPE_COMPONENT_CAP};
pub use solve::{solve_slope, SolveConfig};
pub use sweep::{chebyshev_grid, sweep_branch, SlopeSample, MIN_GRID};
