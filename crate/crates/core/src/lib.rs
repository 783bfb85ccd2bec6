//! Elliptic `SL_2` representation curves of the double twist knots
//! `C(2m,-2n)`, `C(2m+1,2n)` and `C(2m+1,-2n)`, and certificates that a
//! rational surgery slope `p/q` is realized by a representation killing
//! `mu^p lambda^q`.

pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod format;
pub mod knot_words;
mod numeric;
pub mod representations;
pub mod riley;
pub mod slopes;
pub mod tolerance;

pub use error::{Error, Result};
pub use knot_words::{Family, KnotSpec, Matrix2C, Word};
pub use slopes::{Slope, SurgeryCertificate};
pub use tolerance::Tolerances;
