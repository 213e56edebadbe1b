//! Integer 2x2 matrices acting as Moebius maps on the extended rationals.

use crate::{Rational, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Row-major integer matrix [[a, b], [c, d]].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub entries: [[BigInt; 2]; 2],
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn a(&self) -> &BigInt {
        &self.entries[0][0]
    }

    pub fn b(&self) -> &BigInt {
        &self.entries[0][1]
    }

    pub fn c(&self) -> &BigInt {
        &self.entries[1][0]
    }

    pub fn d_entry(&self) -> &BigInt {
        &self.entries[1][1]
    }

    pub fn det(&self) -> BigInt {
        self.a() * self.d_entry() - self.b() * self.c()
    }

    pub fn trace(&self) -> BigInt {
        self.a() + self.d_entry()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            self.a() * rhs.a() + self.b() * rhs.c(),
            self.a() * rhs.b() + self.b() * rhs.d_entry(),
            self.c() * rhs.a() + self.d_entry() * rhs.c(),
            self.c() * rhs.b() + self.d_entry() * rhs.d_entry(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a(), -self.b(), -self.c(), -self.d_entry())
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse_unimodular(&self) -> Self {
        let det = self.det();
        assert!(det.clone().abs().is_one(), "matrix is not unimodular");
        let m = Self::new(self.d_entry().clone(), -self.b(), -self.c(), self.a().clone());
        if det.is_one() {
            m
        } else {
            m.neg()
        }
    }

    /// Negate one column, flipping the determinant sign while keeping the
    /// projective images of the column's fixed cusp.
    pub fn negate_second_column(&self) -> Self {
        Self::new(self.a().clone(), -self.b(), self.c().clone(), -self.d_entry())
    }

    /// Projective action on the extended rationals.
    pub fn apply(&self, x: &Rational) -> Result<Rational> {
        Rational::new(
            self.a() * x.num() + self.b() * x.den(),
            self.c() * x.num() + self.d_entry() * x.den(),
        )
    }

    pub fn is_in_gamma0(&self, n: u64) -> bool {
        self.det().is_one() && (self.c() % BigInt::from(n)).is_zero()
    }

    pub fn is_projective_identity(&self) -> bool {
        let id = Self::identity();
        *self == id || *self == id.neg()
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        *self == *other || *self == other.neg()
    }

    /// Order of the Moebius map (1, 2, 3) if it is elliptic of low order.
    pub fn projective_order(&self) -> Option<u32> {
        if self.is_projective_identity() {
            return Some(1);
        }
        let sq = self.mul(self);
        if sq.is_projective_identity() {
            return Some(2);
        }
        if sq.mul(self).is_projective_identity() {
            return Some(3);
        }
        None
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a(), self.b(), self.c(), self.d_entry())
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_action_and_inverse() {
        let m = Mat2::from_i64(1, 1, 0, 1); // z + 1
        let x: Rational = "3/2".parse().unwrap();
        assert_eq!(m.apply(&x).unwrap(), "5/2".parse().unwrap());
        assert_eq!(m.apply(&Rational::infinity()).unwrap(), Rational::infinity());
        let inv = m.inverse_unimodular();
        assert_eq!(inv.apply(&m.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn orders_of_elliptic_elements() {
        let s = Mat2::from_i64(0, -1, 1, 0);
        assert_eq!(s.projective_order(), Some(2));
        let r = Mat2::from_i64(0, -1, 1, 1);
        assert_eq!(r.projective_order(), Some(3));
        let t = Mat2::from_i64(1, 1, 0, 1);
        assert_eq!(t.projective_order(), None);
    }
}
