//! Real quadratic surds `(p + sqrt(d))/q` with exact, fully canonical
//! representation: comparisons, floor, field arithmetic and Moebius action are
//! all integer-only, so two equal values always have identical field triples.

use crate::rational::bigint_f64;
use crate::{gcd3, square_divisor, Error, Rational, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Value `(p + sqrt(d))/q` with `q != 0` and `d >= 0`.
///
/// Canonical invariants maintained by every constructor:
/// * `d == 0` encodes a rational `p/q` in lowest terms with `q > 0`;
/// * otherwise `d` is not a perfect square, `q` divides `d - p^2`, and no
///   `g > 1` divides `p` and `q` with `g^2` dividing `d`.
///
/// A negative `q` encodes values below the rational part axis
/// (`(p + sqrt(d))/(-q) = -(p + sqrt(d))/q`), so every real quadratic number is
/// representable. Canonicality makes the triple hashable for cycle detection.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// `(p + sqrt(d))/q`, normalised.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        Self::from_coeffs(p, BigInt::one(), d, q)
    }

    /// `(a + b*sqrt(d))/c`, normalised. This is the workhorse constructor: the
    /// square of `b` is folded into the radicand and the triple reduced.
    pub fn from_coeffs(a: BigInt, b: BigInt, d: BigInt, c: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroSurdDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if b.is_negative() {
            // (a - |b| sqrt(d))/c == (-a + |b| sqrt(d))/(-c)
            a = -a;
            b = -b;
            c = -c;
        }
        let mut rad = &b * &b * &d;
        let root = rad.sqrt();
        if &root * &root == rad {
            // Rational value (a + root)/c.
            let num = a + root;
            let g = num.gcd(&c);
            let (mut num, mut den) = (num / &g, c / g);
            if den.is_negative() {
                num = -num;
                den = -den;
            }
            return Ok(Self { p: num, q: den, d: BigInt::zero() });
        }
        // Enforce q | d - p^2 by scaling.
        let mut p = a;
        let mut q = c;
        let r = &rad - &p * &p;
        if !r.is_multiple_of(&q) {
            let t = (&q / q.gcd(&r)).abs();
            p *= &t;
            rad *= &t * &t;
            q *= t;
        }
        // Remove the common square content.
        let e = (&rad - &p * &p) / &q;
        let g = square_divisor(&gcd3(&p, &q, &e), &rad);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            rad /= &g * &g;
        }
        Ok(Self { p, q, d: rad })
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_infinite() {
            return Err(Error::InfiniteOperand);
        }
        Ok(Self { p: r.num().clone(), q: r.den().clone(), d: BigInt::zero() })
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        Self { p: n.into(), q: BigInt::one(), d: BigInt::zero() }
    }

    /// Positive square root of a non-square positive integer (or exact root).
    pub fn sqrt_of(n: &BigInt) -> Result<Self> {
        Self::from_coeffs(BigInt::zero(), BigInt::one(), n.clone(), BigInt::one())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(Rational::new(self.p.clone(), self.q.clone()).expect("canonical"))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.p.is_zero()
    }

    pub fn sign(&self) -> i32 {
        sign_lin(&self.p, &BigInt::one(), &self.d) * sign_big(&self.q)
    }

    pub fn add_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_infinite() {
            return Err(Error::InfiniteOperand);
        }
        let (a, b) = (r.num(), r.den());
        Self::from_coeffs(&self.p * b + a * &self.q, b.clone(), self.d.clone(), &self.q * b)
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        Self::from_coeffs(&self.p + n * &self.q, BigInt::one(), self.d.clone(), self.q.clone())
            .expect("shift keeps invariants")
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        self.add_int(&-n)
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p.clone(), q: -&self.q, d: self.d.clone() }
            .renormalise()
    }

    fn renormalise(self) -> Self {
        Self::from_coeffs(self.p, BigInt::one(), self.d, self.q).expect("was canonical")
    }

    /// Multiply by a rational of either sign (zero gives the rational zero).
    pub fn mul_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_infinite() {
            return Err(Error::InfiniteOperand);
        }
        let (a, b) = (r.num(), r.den());
        Self::from_coeffs(&self.p * a, a.clone(), self.d.clone(), &self.q * b)
    }

    pub fn mul_int(&self, n: &BigInt) -> Result<Self> {
        Self::from_coeffs(&self.p * n, n.clone(), self.d.clone(), self.q.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonPositive("reciprocal of zero".into()));
        }
        if self.is_rational() {
            return Self::from_coeffs(self.q.clone(), BigInt::zero(), BigInt::zero(), self.p.clone());
        }
        // q/(p + sqrt d) = (q p - q sqrt d)/(p^2 - d)
        Self::from_coeffs(&self.q * &self.p, -&self.q, self.d.clone(), &self.p * &self.p - &self.d)
    }

    /// Exact division by a surd in the same quadratic field (or a rational).
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::NonPositive("division by zero".into()));
        }
        if other.is_rational() {
            return self.mul_rational(&Rational::new(other.q.clone(), other.p.clone())?.clone());
        }
        if self.is_rational() {
            return other.recip()?.mul_rational(&self.to_rational().expect("rational"));
        }
        let prod = &self.d * &other.d;
        let s = prod.sqrt();
        assert_eq!(&s * &s, prod, "surd division requires a common quadratic field");
        // self/other = q2 (p1 + sqrt d1)(p2 - sqrt d2) / (q1 (p2^2 - d2)),
        // with sqrt d1 sqrt d2 = s and sqrt d2 = (s/d1) sqrt d1; multiply
        // numerator and denominator by d1 to stay integral.
        let a = &self.d * (&self.p * &other.p - &s);
        let b = &other.p * &self.d - &self.p * &s;
        let c = &self.q * (&other.p * &other.p - &other.d) * &self.d;
        Self::from_coeffs(&other.q * a, &other.q * b, self.d.clone(), c)
    }

    /// Image under the Moebius map of an integer matrix with non-zero determinant.
    pub fn mobius(&self, m: &crate::Mat2) -> Result<Self> {
        let num = self.mul_int(m.a())?.add_int(m.b());
        let den = self.mul_int(m.c())?.add_int(m.d_entry());
        num.div(&den)
    }

    pub fn floor(&self) -> BigInt {
        if self.d.is_zero() {
            return self.p.div_floor(&self.q);
        }
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.q)
        } else {
            // floor(-(p + sqrt d)/|q|) with irrational value.
            -((&self.p + s).div_floor(&-&self.q) + BigInt::one())
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if r.is_infinite() {
            return Ordering::Less;
        }
        // sign of (p rd - rn q) + rd sqrt(d), corrected by sign(q rd).
        let lhs = &self.p * r.den() - r.num() * &self.q;
        let s = sign_lin(&lhs, r.den(), &self.d) * sign_big(&(&self.q * r.den()));
        ord_of(s)
    }

    pub fn to_f64(&self) -> f64 {
        (bigint_f64(&self.p) + bigint_f64(&self.d).sqrt()) / bigint_f64(&self.q)
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of (p1 q2 - p2 q1) + q2 sqrt(d1) - q1 sqrt(d2), times sign(q1 q2).
        let a = &self.p * &other.q - &other.p * &self.q;
        let s = sign_sum(&a, &other.q, &self.d, &-&self.q, &other.d)
            * sign_big(&(&self.q * &other.q));
        ord_of(s)
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/{}", self.p, self.d, self.q)
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for QuadraticSurd {
    type Err = Error;

    /// Parses the textual form `(p+sqrt(d))/q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (p+sqrt(d))/q, got {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix('(').ok_or_else(bad)?;
        let (p_str, rest) = rest.split_once("+sqrt(").ok_or_else(bad)?;
        let (d_str, rest) = rest.split_once("))/").ok_or_else(bad)?;
        let p = p_str.parse().map_err(|_| bad())?;
        let d = d_str.parse().map_err(|_| bad())?;
        let q = rest.parse().map_err(|_| bad())?;
        Self::new(p, q, d)
    }
}

fn sign_big(x: &BigInt) -> i32 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn ord_of(s: i32) -> Ordering {
    match s {
        x if x < 0 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// Sign of `a + b*sqrt(d)` with `d >= 0`.
pub(crate) fn sign_lin(a: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
    let b_eff = if d.is_zero() { 0 } else { sign_big(b) };
    let sa = sign_big(a);
    match (sa, b_eff) {
        (_, 0) => sa,
        (0, sb) => sb,
        (x, y) if x == y => x,
        (1, -1) => sign_big(&(a * a - b * b * d)),
        (-1, 1) => -sign_big(&(a * a - b * b * d)),
        _ => unreachable!(),
    }
}

/// Sign of `b*sqrt(d1) + c*sqrt(d2)`.
fn sign_pair(b: &BigInt, d1: &BigInt, c: &BigInt, d2: &BigInt) -> i32 {
    let sb = if d1.is_zero() { 0 } else { sign_big(b) };
    let sc = if d2.is_zero() { 0 } else { sign_big(c) };
    match (sb, sc) {
        (0, s) => s,
        (s, 0) => s,
        (x, y) if x == y => x,
        (1, -1) => sign_big(&(b * b * d1 - c * c * d2)),
        (-1, 1) => -sign_big(&(b * b * d1 - c * c * d2)),
        _ => unreachable!(),
    }
}

/// Sign of `a + b*sqrt(d1) + c*sqrt(d2)`, fully exact.
fn sign_sum(a: &BigInt, b: &BigInt, d1: &BigInt, c: &BigInt, d2: &BigInt) -> i32 {
    let st = sign_pair(b, d1, c, d2);
    let sa = sign_big(a);
    if sa == 0 {
        return st;
    }
    if st == 0 || st == sa {
        return sa;
    }
    // |a|^2 - |t|^2 = (a^2 - b^2 d1 - c^2 d2) - 2bc sqrt(d1 d2)
    let k = a * a - b * b * d1 - c * c * d2;
    let r = BigInt::from(-2) * b * c;
    let s = sign_lin(&k, &r, &(d1 * d2));
    if s == 0 {
        0
    } else if s > 0 {
        sa
    } else {
        st
    }
}
