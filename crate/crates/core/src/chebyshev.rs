//! Chebyshev polynomials `S_j` normalized by `S_0 = 1`, `S_1 = v` and
//! `S_j = v S_{j-1} - S_{j-2}` for every integer `j`.
//!
//! Values are produced by the three-term recurrence only. For the arguments
//! the curve solvers use (`v >= 2`, or `|v| <= 2` plus a small excess) the
//! rounding error grows polynomially in `|j|`, so `f64` is adequate for
//! `|j| <= 200` and `|v| <= 10`.

use std::f64::consts::PI;
use std::ops::{Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{ensure_finite, Error, Result};

/// Scalars the recurrence can run over.
pub trait ChebScalar: Copy + Zero + One + Mul<Output = Self> + Sub<Output = Self> {}
impl ChebScalar for f64 {}
impl ChebScalar for Complex64 {}

/// `(S_j(v), S_{j-1}(v))` from one recurrence pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebPair {
    pub j: i64,
    pub v: Complex64,
    pub s_j: Complex64,
    pub s_jm1: Complex64,
}

impl ChebPair {
    /// `S_j^2 - v S_j S_{j-1} + S_{j-1}^2 - 1`, zero in exact arithmetic.
    pub fn identity_defect(&self) -> Complex64 {
        self.s_j * self.s_j - self.v * self.s_j * self.s_jm1 + self.s_jm1 * self.s_jm1
            - Complex64::one()
    }
}

/// Returns `(S_j, S_{j-1})` for `j >= 0`.
fn forward_pair<T: ChebScalar>(j: i64, v: T) -> (T, T) {
    debug_assert!(j >= 0);
    let mut prev = T::zero(); // S_{-1}
    let mut cur = T::one(); // S_0
    for _ in 0..j {
        let next = v * cur - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `(S_j(v), S_{j-1}(v))` for any integer `j`, without input validation.
pub fn pair<T: ChebScalar>(j: i64, v: T) -> (T, T) {
    if j >= 0 {
        forward_pair(j, v)
    } else {
        // S_j = -S_{-j-2} and S_{j-1} = -S_{-j-1}.
        let (hi, lo) = forward_pair(-j - 1, v);
        (T::zero() - lo, T::zero() - hi)
    }
}

/// `S_j(v)` for any integer `j`, without input validation.
#[inline]
pub fn s<T: ChebScalar>(j: i64, v: T) -> T {
    pair(j, v).0
}

/// `S_j(v)` with the argument checked for finiteness.
pub fn cheb_eval(j: i64, v: Complex64) -> Result<Complex64> {
    ensure_finite("Re v", v.re)?;
    ensure_finite("Im v", v.im)?;
    Ok(s(j, v))
}

pub fn cheb_pair(j: i64, v: Complex64) -> Result<ChebPair> {
    ensure_finite("Re v", v.re)?;
    ensure_finite("Im v", v.im)?;
    let (s_j, s_jm1) = pair(j, v);
    Ok(ChebPair { j, v, s_j, s_jm1 })
}

/// Which factorization over cosine roots to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductForm {
    /// `S_n - S_{n-1}`, roots `2cos((2j-1)pi/(2n+1))`.
    Minus,
    /// `S_n + S_{n-1}`, roots `2cos(2j pi/(2n+1))`.
    Plus,
    /// `S_n`, roots `2cos(j pi/(n+1))`.
    Plain,
}

impl ProductForm {
    /// The `n` roots of the selected polynomial.
    pub fn roots(self, n: i64) -> Vec<f64> {
        (1..=n)
            .map(|j| {
                let (j, n) = (j as f64, n as f64);
                let angle = match self {
                    ProductForm::Minus => (2.0 * j - 1.0) * PI / (2.0 * n + 1.0),
                    ProductForm::Plus => 2.0 * j * PI / (2.0 * n + 1.0),
                    ProductForm::Plain => j * PI / (n + 1.0),
                };
                2.0 * angle.cos()
            })
            .collect()
    }
}

/// Evaluates the product of `(v - root)` over the roots of `form` for degree `n`.
pub fn product_form(n: i64, form: ProductForm, v: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("product form needs n >= 1, got {n}")));
    }
    ensure_finite("v", v)?;
    Ok(form.roots(n).into_iter().map(|r| v - r).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// `(s^{j+1} - s^{-(j+1)}) / (s - s^{-1})` with `s + 1/s = v`.
    fn closed_form(j: i64, v: Complex64) -> Complex64 {
        let disc = (v * v - 4.0).sqrt();
        let root = (v + disc) / 2.0;
        let k = (j + 1) as i32;
        (root.powi(k) - root.powi(-k)) / (root - root.inv())
    }

    #[test]
    fn base_values() {
        assert_eq!(s(-1, 17.3), 0.0);
        assert_eq!(s(0, 17.3), 1.0);
        assert_eq!(s(1, 17.3), 17.3);
        assert_eq!(cheb_eval(3, c(2.0)).unwrap(), c(4.0));
    }

    #[test]
    fn closed_form_agrees_off_the_degenerate_points() {
        let got = cheb_eval(5, c(1.7)).unwrap();
        let want = closed_form(5, c(1.7));
        assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        for j in -12..12 {
            let v = Complex64::new(0.3, 0.8);
            assert!((s(j, v) - closed_form(j, v)).norm() < 1e-9);
        }
    }

    #[test]
    fn values_at_plus_minus_two() {
        let p = cheb_pair(4, c(2.0)).unwrap();
        assert_eq!((p.s_j, p.s_jm1), (c(5.0), c(4.0)));
        let p = cheb_pair(6, c(-2.0)).unwrap();
        assert_eq!((p.s_j, p.s_jm1), (c(7.0), c(-6.0)));
        let p = cheb_pair(1, c(0.4)).unwrap();
        assert_eq!((p.s_j, p.s_jm1), (c(0.4), c(1.0)));
    }

    #[test]
    fn negative_index_symmetry() {
        for j in -30..30 {
            let v = 1.37;
            assert!((s(j, v) + s(-j - 2, v)).abs() < 1e-9, "j = {j}");
        }
        let p = cheb_pair(-1, c(3.0)).unwrap();
        assert_eq!(p.s_j, c(0.0));
        assert_eq!(p.s_jm1, c(-1.0));
    }

    #[test]
    fn product_forms_match_recurrence() {
        assert_eq!(product_form(1, ProductForm::Plain, 0.7).unwrap(), 0.7 - 2.0 * (PI / 2.0).cos());
        assert!((product_form(2, ProductForm::Minus, 2.0).unwrap() - 1.0).abs() < 1e-12);
        let want = s(3, 1.5) + s(2, 1.5);
        assert!((product_form(3, ProductForm::Plus, 1.5).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cheb_eval(2, Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(cheb_pair(2, Complex64::new(0.0, f64::INFINITY)).is_err());
        assert!(product_form(0, ProductForm::Plain, 1.0).is_err());
        assert!(product_form(3, ProductForm::Minus, f64::NAN).is_err());
    }

    #[test]
    fn increasing_beyond_two() {
        for n in 1..12 {
            let mut last = s(n, 2.0);
            for i in 1..200 {
                let v = 2.0 + i as f64 * 0.02;
                let cur = s(n, v);
                assert!(cur > last, "S_{n} not increasing at {v}");
                last = cur;
            }
        }
    }
}
