//! Group presentations of `C(k, -2p)` and evaluation of words at 2x2 matrices.

mod knot;
mod matrix;
mod word;

pub use knot::{Family, KnotSpec};
pub use matrix::Matrix2C;
pub use word::{Gen, Word};

use num_complex::Complex64;

/// `<a, b | a w^p = w^p b>` together with the canonical longitude for `mu = a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub w: Word,
    /// `w^p` with `p` signed.
    pub w_p: Word,
    pub relator_lhs: Word,
    pub relator_rhs: Word,
    pub longitude: Word,
}

/// `(ab^-1)^m (a^-1 b)^m` for even `k`, `(ab^-1)^m ab (a^-1 b)^m` for odd `k`.
pub fn base_word(spec: &KnotSpec) -> Word {
    let m = spec.m();
    let mut w = Word::from_letters([(Gen::A, 1), (Gen::B, -1)]).pow(m);
    if spec.family.is_odd() {
        w = w.concat(&Word::from_letters([(Gen::A, 1), (Gen::B, 1)]));
    }
    w.concat(&Word::from_letters([(Gen::A, -1), (Gen::B, 1)]).pow(m))
}

pub fn build_presentation(spec: &KnotSpec) -> Presentation {
    let w = base_word(spec);
    let w_p = w.pow(spec.twist_p());
    let relator_lhs = Word::letter(Gen::A, 1).concat(&w_p);
    let relator_rhs = w_p.concat(&Word::letter(Gen::B, 1));
    let longitude = w_p
        .concat(&w_p.reverse())
        .concat(&Word::letter(Gen::A, -2 * spec.epsilon()))
        .inverse();
    Presentation {
        w,
        w_p,
        relator_lhs,
        relator_rhs,
        longitude,
    }
}

/// Image of `word` under `a -> a_img`, `b -> b_img`.
pub fn evaluate_word(word: &Word, a_img: &Matrix2C, b_img: &Matrix2C) -> Matrix2C {
    let (a_inv, b_inv) = (a_img.inverse(), b_img.inverse());
    let mut acc = Matrix2C::identity();
    for &(g, e) in word.letters() {
        let step = match (g, e > 0) {
            (Gen::A, true) => a_img,
            (Gen::A, false) => &a_inv,
            (Gen::B, true) => b_img,
            (Gen::B, false) => &b_inv,
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc * *step;
        }
    }
    acc
}

/// The meridian pair `rho(a) = [[M, 1], [0, 1/M]]`, `rho(b) = [[M, 0], [2 - y, 1/M]]`.
pub fn meridian_images(m: Complex64, y: f64) -> (Matrix2C, Matrix2C) {
    let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let a = Matrix2C::new(m, one, zero, m.inv());
    let b = Matrix2C::new(m, zero, Complex64::new(2.0 - y, 0.0), m.inv());
    (a, b)
}

/// Frobenius norm of `rho(a w^p) - rho(w^p b)`.
pub fn relation_residual(spec: &KnotSpec, a_img: &Matrix2C, b_img: &Matrix2C) -> f64 {
    let pres = build_presentation(spec);
    let w_p = evaluate_word(&pres.w_p, a_img, b_img);
    (*a_img * w_p).distance(&(w_p * *b_img))
}
