use std::ops::{Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A 2x2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2C {
    pub entries: [Complex64; 4],
}

impl Matrix2C {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(o, z, z, o)
    }

    pub fn upper_left(&self) -> Complex64 {
        self.entries[0]
    }

    pub fn upper_right(&self) -> Complex64 {
        self.entries[1]
    }

    pub fn lower_left(&self) -> Complex64 {
        self.entries[2]
    }

    pub fn lower_right(&self) -> Complex64 {
        self.entries[3]
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0] + self.entries[3]
    }

    /// Adjugate divided by the determinant.
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.entries;
        let det = self.det();
        Self::new(d / det, -b / det, -c / det, a / det)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.is_finite())
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, rhs: Matrix2C) -> Matrix2C {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        Matrix2C::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl Sub for Matrix2C {
    type Output = Matrix2C;

    fn sub(self, rhs: Matrix2C) -> Matrix2C {
        let mut out = self;
        for (o, r) in out.entries.iter_mut().zip(rhs.entries) {
            *o -= r;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Matrix2C {
        let m = Complex64::from_polar(1.0, 0.7);
        Matrix2C::new(m, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), m.inv())
    }

    #[test]
    fn inverse_and_powers() {
        let a = sample();
        assert!((a * a.inverse()).distance(&Matrix2C::identity()) < 1e-14);
        let p5 = a.powi(5);
        let mut slow = Matrix2C::identity();
        for _ in 0..5 {
            slow = slow * a;
        }
        assert!(p5.distance(&slow) < 1e-13);
        assert!((a.powi(-3) * a.powi(3)).distance(&Matrix2C::identity()) < 1e-13);
        assert!((a.powi(7).det() - 1.0).norm() < 1e-13);
    }
}
