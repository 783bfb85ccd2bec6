use std::fmt;

use serde::{Deserialize, Serialize};

/// Generator of the two-bridge presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
}

/// A word in `a, b`, run-length encoded as `(generator, nonzero exponent)`.
///
/// Adjacent runs always carry distinct generators; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = (Gen, i64)>>(letters: I) -> Self {
        let mut w = Self::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letter(g: Gen, e: i64) -> Self {
        Self::from_letters([(g, e)])
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of `|exponent|` over all runs.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Appends `g^e`, merging with the last run and cancelling if needed.
    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if *exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &(g, e) in &other.letters {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// Reads the word backwards; exponents are kept.
    pub fn reverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().copied())
    }

    /// `self^k` for any integer `k`; negative powers use the formal inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = match g {
                Gen::A => 'a',
                Gen::B => 'b',
            };
            if e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}
