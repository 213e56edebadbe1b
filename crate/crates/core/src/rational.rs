//! Reduced rationals on the boundary of the upper half-plane, including the
//! point at infinity represented as 1/0.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A reduced fraction `num/den` with `den >= 0`; `den == 0` encodes the point
/// at infinity (canonically 1/0). The representation is always fully reduced,
/// so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Build a reduced rational. 0/0 is rejected; any `p/0` collapses to 1/0.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        if den.is_zero() {
            return Ok(Self { num: BigInt::one(), den: BigInt::zero() });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    fn finite(&self) -> Result<()> {
        if self.is_infinite() {
            Err(Error::InfiniteOperand)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.finite()?;
        rhs.finite()?;
        Self::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.finite()?;
        rhs.finite()?;
        Self::new(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.finite()?;
        rhs.finite()?;
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.finite()?;
        rhs.finite()?;
        if rhs.num.is_zero() {
            return Err(Error::NonPositive("division by zero".into()));
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    /// `n * self`, reduced; valid for infinity as well (n * oo = oo).
    pub fn scale_int(&self, n: &BigInt) -> Result<Self> {
        Self::new(&self.num * n, self.den.clone())
    }

    pub fn is_positive_finite(&self) -> bool {
        !self.is_infinite() && self.num.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            bigint_f64(&self.num) / bigint_f64(&self.den)
        }
    }
}

pub(crate) fn bigint_f64(x: &BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Total order on the extended line with infinity greatest.
impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("bad numerator {n:?}: {e}")))?;
        let den = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("bad denominator {d:?}: {e}")))?;
        Self::new(num, den)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}
