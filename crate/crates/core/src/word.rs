//! Cutting words: alternating powers of the two triangle-crossing letters,
//! with the free reduction that removes zero exponents.

use crate::{ContinuedFraction, Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// The word `L^e0 R^e1 L^e2 ...`; `exps[0]` is always the exponent of `L`.
/// Exponents may be zero or negative in unreduced (generalised) words.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct CuttingWord {
    exps: Vec<BigInt>,
}

impl CuttingWord {
    pub fn new(exps: Vec<BigInt>) -> Self {
        Self { exps }
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        Self::new(exps.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    /// Freely reduces the word: an interior factor `x^0` is removed by
    /// concatenating its neighbours (`g x^0 h = gh` for same-letter `g`, `h`),
    /// and trailing zero factors are dropped. Idempotent.
    pub fn reduce(&self) -> Self {
        let mut w = self.exps.clone();
        loop {
            let mut changed = false;
            let mut i = 1;
            while i + 1 < w.len() {
                if w[i].is_zero() {
                    let merged = &w[i - 1] + &w[i + 1];
                    w[i - 1] = merged;
                    w.drain(i..=i + 1);
                    changed = true;
                    i = i.saturating_sub(1).max(1);
                } else {
                    i += 1;
                }
            }
            while w.len() > 1 && w.last().map(|x| x.is_zero()).unwrap_or(false) {
                w.pop();
                changed = true;
            }
            if !changed {
                break;
            }
        }
        Self { exps: w }
    }

    pub fn is_reduced(&self) -> bool {
        let interior_ok = self.exps.iter().take(self.exps.len().saturating_sub(1)).skip(1).all(|x| !x.is_zero());
        let tail_ok = self.exps.len() <= 1 || !self.exps.last().expect("non-empty").is_zero();
        interior_ok && tail_ok
    }

    /// The finite continued fraction whose partial quotients are the
    /// exponents. Requires a reduced word with non-negative exponents.
    pub fn to_cf(&self) -> Result<ContinuedFraction> {
        if !self.is_reduced() || self.exps.iter().any(|x| x.is_negative()) || self.exps.is_empty() {
            return Err(Error::UnreducedWord);
        }
        let mut exps = self.exps.clone();
        let a0 = exps.remove(0);
        ContinuedFraction::new(a0, exps, vec![])
    }

    /// Inverse of [`CuttingWord::to_cf`] for finite fractions.
    pub fn from_cf(cf: &ContinuedFraction) -> Result<Self> {
        if !cf.is_finite() {
            return Err(Error::UnreducedWord);
        }
        Ok(Self { exps: cf.quotients().collect() })
    }
}

impl fmt::Display for CuttingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "L^0");
        }
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let letter = if i % 2 == 0 { 'L' } else { 'R' };
            write!(f, "{letter}^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CuttingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_concatenates_around_zero_exponents() {
        // L^0 R^1 L^1 R^1 L^0 R^-1 L^1 R^1 L^1  ->  L^0 R^1 L^2 R^1 L^1
        let w = CuttingWord::from_i64(&[0, 1, 1, 1, 0, -1, 1, 1, 1]);
        let r = w.reduce();
        assert_eq!(r, CuttingWord::from_i64(&[0, 1, 2, 1, 1]));
        assert!(r.is_reduced());
        assert_eq!(r.reduce(), r);
    }

    #[test]
    fn trailing_zeroes_are_dropped() {
        let w = CuttingWord::from_i64(&[2, 3, 0]);
        assert_eq!(w.reduce(), CuttingWord::from_i64(&[2, 3]));
    }

    #[test]
    fn word_and_finite_fraction_correspondence() {
        let w = CuttingWord::from_i64(&[1, 2, 3]);
        let cf = w.to_cf().unwrap();
        assert_eq!(cf.to_string(), "[1;2,3]");
        assert_eq!(CuttingWord::from_cf(&cf).unwrap(), w);
        assert!(CuttingWord::from_i64(&[1, 0, 3]).to_cf().is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(CuttingWord::from_i64(&[0, 1, 2]).to_string(), "L^0 R^1 L^2");
    }
}
