//! Continued fractions with an optional periodic tail, their convergents,
//! height, periodicity classification, and the exact conversions to and from
//! quadratic surds used as the algebraic multiplication oracle.

use crate::{big, Error, Mat2, QuadraticSurd, Rational, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// `[a0; b1,...,br, (p1,...,ps)]` with all partial quotients after `a0`
/// positive. An empty period means the fraction is finite. The stored form is
/// canonical: minimal period, shortest preperiod, and no trailing quotient 1
/// in the finite case, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ContinuedFraction {
    a0: BigInt,
    pre: Vec<BigInt>,
    period: Vec<BigInt>,
}

/// One convergent `p/q` together with its index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub k: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("convergents are reduced")
    }
}

/// Membership in the nested periodicity classes (each class includes the ones
/// listed before it: strictly periodic implies eventually so, and so on).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeriodicityClass {
    /// Strictly periodic: `[(a0; ...)]` (the leading quotient is part of the
    /// period) or `[0; (...)]`.
    StrictlyPeriodic,
    /// Essentially strictly periodic but not strictly periodic.
    EssentiallyStrictlyPeriodic,
    /// Eventually periodic only.
    EventuallyPeriodic,
    /// No periodic tail.
    Finite,
}

impl ContinuedFraction {
    /// Canonical constructor. All quotients after `a0` must be positive and
    /// `a0` non-negative; use [`ContinuedFraction::absorb_zero_quotients`] for
    /// raw sequences containing zeros.
    pub fn new(a0: BigInt, pre: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if a0.is_negative() {
            return Err(Error::NonPositive(a0.to_string()));
        }
        for x in pre.iter().chain(period.iter()) {
            if !x.is_positive() {
                return Err(Error::NonPositive(x.to_string()));
            }
        }
        if a0.is_zero() && pre.is_empty() && period.is_empty() {
            return Err(Error::NonPositive("[0]".into()));
        }
        Ok(Self { a0, pre, period }.canonicalise())
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Result<Self> {
        Self::new(n.into(), vec![], vec![])
    }

    /// Builds from a raw quotient sequence that may contain zeros inside or at
    /// the end of the period (or preperiod), applying the concatenation rule
    /// `..., x, 0, y, ... = ..., x+y, ...` until none remain.
    pub fn absorb_zero_quotients(a0: BigInt, pre: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        for x in pre.iter().chain(period.iter()).chain(std::iter::once(&a0)) {
            if x.is_negative() {
                return Err(Error::NonPositive(x.to_string()));
            }
        }
        if period.iter().all(|x| x.is_zero()) && !period.is_empty() {
            return Err(Error::NonPositive("all-zero period".into()));
        }
        // Expand a window of the quotient sequence, absorb, then re-fold.
        let copies = if period.is_empty() { 0 } else { 4 };
        let mut window: Vec<BigInt> = Vec::new();
        window.push(a0);
        window.extend(pre.iter().cloned());
        for _ in 0..copies {
            window.extend(period.iter().cloned());
        }
        let mut i = 1usize;
        while i + 1 < window.len() {
            if window[i].is_zero() {
                let merged = &window[i - 1] + &window[i + 1];
                window[i - 1] = merged;
                window.drain(i..=i + 1);
                i = i.saturating_sub(1).max(1);
            } else {
                i += 1;
            }
        }
        if period.is_empty() {
            while window.len() > 1 && window.last().map(|x| x.is_zero()).unwrap_or(false) {
                window.pop();
            }
            let a0 = window.remove(0);
            return Self::new(a0, window, vec![]);
        }
        // Drop the possibly half-merged tail of the window, then find the
        // shortest eventual period consistent with the remainder.
        window.truncate(window.len().saturating_sub(2));
        for s in 1..=period.len() {
            for t in 1..window.len() {
                if window.len() < t + 2 * s + 2 {
                    break;
                }
                if (t..window.len() - s).all(|i| window[i] == window[i + s]) {
                    let a0 = window[0].clone();
                    let pre = window[1..t].to_vec();
                    let per = window[t..t + s].to_vec();
                    return Self::new(a0, pre, per);
                }
            }
        }
        Err(Error::PeriodNotFound(window.len()))
    }

    fn canonicalise(mut self) -> Self {
        if self.period.is_empty() {
            // Forbid a trailing quotient 1: [.., x, 1] = [.., x+1].
            if self.pre.last().map(|x| x.is_one()).unwrap_or(false) {
                self.pre.pop();
                match self.pre.last_mut() {
                    Some(last) => *last += 1,
                    None => self.a0 += 1,
                }
            }
            return self;
        }
        // Minimal period via the classic failure function.
        let s = minimal_repetition(&self.period);
        self.period.truncate(s);
        // Shortest preperiod: rotate the period while its last entry matches
        // the last preperiod entry.
        while let Some(last) = self.pre.last() {
            if last == self.period.last().expect("non-empty period") {
                self.pre.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
        self
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.pre
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Infinite (or finite) stream of partial quotients starting at `a0`.
    pub fn quotients(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::once(self.a0.clone())
            .chain(self.pre.iter().cloned())
            .chain(self.period.iter().cloned().cycle().take(if self.period.is_empty() {
                0
            } else {
                usize::MAX
            }))
    }

    /// Number of partial quotients including `a0`, if finite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then(|| 1 + self.pre.len())
    }

    /// The first `count` convergents `p_k/q_k` (k = 0 is `a0/1`).
    pub fn convergents(&self, count: usize) -> Result<Vec<Convergent>> {
        if let Some(len) = self.len() {
            if count > len {
                return Err(Error::NotEnoughQuotients(len));
            }
        }
        let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
        let (mut p, mut q) = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(count);
        for (k, a) in self.quotients().take(count).enumerate() {
            let p_next = &a * &p + &p_prev;
            let q_next = &a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            out.push(Convergent { k, p: p.clone(), q: q.clone() });
        }
        Ok(out)
    }

    /// Height: the supremum of the partial quotients excluding `a0`. `None`
    /// when there are no quotients after `a0`. For an infinite fraction the
    /// value is exact; `horizon` only bounds the scan of finite preperiods.
    pub fn height_b(&self, horizon: usize) -> Option<BigInt> {
        let tail: Vec<&BigInt> = if self.period.is_empty() {
            self.pre.iter().take(horizon).collect()
        } else {
            self.pre.iter().chain(self.period.iter()).collect()
        };
        tail.into_iter().max().cloned()
    }

    /// Periodicity class of the canonical form.
    pub fn classify(&self) -> PeriodicityClass {
        if self.period.is_empty() {
            return PeriodicityClass::Finite;
        }
        let last = self.period.last().expect("non-empty period");
        let strictly = self.pre.is_empty() && (self.a0.is_zero() || self.a0 == *last);
        if strictly {
            return PeriodicityClass::StrictlyPeriodic;
        }
        let essentially = (self.pre.is_empty() && self.a0.is_positive() && self.a0 <= *last)
            || (self.a0.is_zero() && self.pre.len() == 1 && self.pre[0] <= *last);
        if essentially {
            return PeriodicityClass::EssentiallyStrictlyPeriodic;
        }
        PeriodicityClass::EventuallyPeriodic
    }

    /// Same value with the period doubled when its length is odd.
    pub fn even_period_parts(&self) -> (BigInt, Vec<BigInt>, Vec<BigInt>) {
        let mut period = self.period.clone();
        if period.len() % 2 == 1 {
            let copy = period.clone();
            period.extend(copy);
        }
        (self.a0.clone(), self.pre.clone(), period)
    }

    /// Same value with the preperiod padded to even length by un-rotating one
    /// period element (requires a periodic tail).
    pub fn even_preperiod_parts(&self) -> Result<(BigInt, Vec<BigInt>, Vec<BigInt>)> {
        if self.period.is_empty() {
            return Err(Error::PeriodNotFound(0));
        }
        let (a0, mut pre, mut period) = (self.a0.clone(), self.pre.clone(), self.period.clone());
        if pre.len() % 2 == 1 {
            pre.push(period[0].clone());
            period.rotate_left(1);
        }
        Ok((a0, pre, period))
    }

    /// Exact value as a quadratic surd (rational surd for finite fractions).
    pub fn to_surd(&self) -> Result<QuadraticSurd> {
        if self.period.is_empty() {
            let mut value = QuadraticSurd::from_integer(0);
            let mut first = true;
            for a in self.pre.iter().rev() {
                value = if first {
                    first = false;
                    QuadraticSurd::from_integer(a.clone())
                } else {
                    value.recip()?.add_int(a)
                };
            }
            return Ok(if first {
                QuadraticSurd::from_integer(self.a0.clone())
            } else {
                value.recip()?.add_int(&self.a0)
            });
        }
        // Fixed point of the period's Moebius map; the periodic tail
        // [p1; p2, ...] is the larger root since all its quotients are >= 1.
        let mut m = Mat2::identity();
        for a in &self.period {
            m = m.mul(&Mat2::new(a.clone(), BigInt::one(), BigInt::one(), BigInt::zero()));
        }
        let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d_entry());
        let half = a - d;
        let disc = &half * &half + big(4) * b * c;
        let mut x = QuadraticSurd::from_coeffs(half, BigInt::one(), disc, big(2) * c)?;
        for a in self.pre.iter().rev() {
            x = x.recip()?.add_int(a);
        }
        Ok(x.recip()?.add_int(&self.a0))
    }

    /// Exact multiplication by a positive rational via surd arithmetic: the
    /// algebraic oracle against which the geometric engines are checked.
    pub fn multiply_oracle(&self, factor: &Rational, max_quotients: usize) -> Result<Self> {
        if !factor.is_positive_finite() {
            return Err(Error::NonPositive(factor.to_string()));
        }
        let scaled = self.to_surd()?.mul_rational(factor)?;
        surd_to_cf(&scaled, max_quotients)
    }
}

/// Smallest `s` such that `w` is the repetition of its prefix of length `s`.
fn minimal_repetition(w: &[BigInt]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let s = n - fail[n - 1];
    if n % s == 0 {
        s
    } else {
        n
    }
}

/// Expansion of a positive surd into its canonical continued fraction using
/// the classical integer recurrence, with state-repetition period detection.
pub fn surd_to_cf(x: &QuadraticSurd, max_quotients: usize) -> Result<ContinuedFraction> {
    if x.sign() <= 0 {
        return Err(Error::NonPositive(x.to_string()));
    }
    if x.is_rational() {
        let r = x.to_rational().expect("rational");
        let (mut p, mut q) = (r.num().clone(), r.den().clone());
        let mut quotients = Vec::new();
        while !q.is_zero() {
            let (a, rem) = p.div_mod_floor(&q);
            quotients.push(a);
            p = std::mem::replace(&mut q, rem);
        }
        let a0 = quotients.remove(0);
        return ContinuedFraction::new(a0, quotients, vec![]);
    }
    // After the initial normalisation the radicand is fixed, so the state is
    // the pair (p, q).
    let (mut p, mut q, d) = (x.p().clone(), x.q().clone(), x.d().clone());
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    loop {
        if quotients.len() > max_quotients {
            return Err(Error::PeriodNotFound(max_quotients));
        }
        if !quotients.is_empty() {
            if let Some(&j) = seen.get(&(p.clone(), q.clone())) {
                let period = quotients.split_off(j);
                let a0 = quotients.remove(0);
                return ContinuedFraction::new(a0, quotients, period);
            }
            seen.insert((p.clone(), q.clone()), quotients.len());
        }
        // a = floor((p + sqrt d)/q), exact for either sign of q.
        let s = d.sqrt();
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            -((&p + &s).div_floor(&-&q) + BigInt::one())
        };
        quotients.push(a.clone());
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        let mut sep = ';';
        for x in &self.pre {
            write!(f, "{sep}{x}")?;
            sep = ',';
        }
        if !self.period.is_empty() {
            write!(f, "{sep}(")?;
            for (i, x) in self.period.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `[a0]`, `[a0;b1,...,br]` and `[a0;b1,...,br,(p1,...,ps)]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("missing brackets"))?;
        let (head, tail) = match body.split_once(';') {
            Some((h, t)) => (h, Some(t)),
            None => (body, None),
        };
        let a0: BigInt = head.trim().parse().map_err(|_| bad("bad leading quotient"))?;
        let (mut pre, mut period) = (Vec::new(), Vec::new());
        if let Some(tail) = tail {
            let (pre_str, per_str) = match tail.split_once('(') {
                Some((p, rest)) => {
                    let inner = rest.strip_suffix(')').ok_or_else(|| bad("unclosed period"))?;
                    (p.trim_end_matches(','), Some(inner))
                }
                None => (tail, None),
            };
            for tok in pre_str.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                pre.push(tok.parse().map_err(|_| bad("bad quotient"))?);
            }
            if let Some(per_str) = per_str {
                for tok in per_str.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    period.push(tok.parse().map_err(|_| bad("bad period entry"))?);
                }
                if period.is_empty() {
                    return Err(bad("empty period"));
                }
            }
        }
        Self::new(a0, pre, period)
    }
}

impl TryFrom<String> for ContinuedFraction {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ContinuedFraction> for String {
    fn from(cf: ContinuedFraction) -> String {
        cf.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn convergents_of_a_finite_fraction() {
        let x = cf("[1;2,2,2]");
        let cs = x.convergents(4).unwrap();
        let pairs: Vec<(i64, i64)> = cs
            .iter()
            .map(|c| (c.p.to_string().parse().unwrap(), c.q.to_string().parse().unwrap()))
            .collect();
        assert_eq!(pairs, vec![(1, 1), (3, 2), (7, 5), (17, 12)]);
        assert!(x.convergents(5).is_err());
        // determinant identity
        for w in cs.windows(2) {
            let det = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
            assert!(det.clone().abs().is_one());
        }
    }

    #[test]
    fn canonical_form_merges_trailing_one() {
        assert_eq!(cf("[1;2,1]"), cf("[1;3]"));
        assert_eq!(cf("[0;1]"), cf("[1]"));
        assert_eq!(cf("[3;1]"), cf("[4]"));
    }

    #[test]
    fn canonical_form_minimises_period_and_preperiod() {
        assert_eq!(cf("[2;(1,1,2,1,1,2)]"), cf("[2;(1,1,2)]"));
        assert_eq!(cf("[2;1,(1,2,1)]"), cf("[2;(1,1,2)]"));
        assert_eq!(cf("[0;1,(2,1,1)]"), cf("[0;(1,2,1)]"));
    }

    #[test]
    fn height_excludes_leading_quotient() {
        assert_eq!(cf("[5;2,3]").height_b(100), Some(big(3)));
        assert_eq!(cf("[5]").height_b(100), None);
        assert_eq!(cf("[0;(1,6)]").height_b(100), Some(big(6)));
    }

    #[test]
    fn classification_hierarchy() {
        use PeriodicityClass::*;
        assert_eq!(cf("[2;(1,1,2)]").classify(), StrictlyPeriodic); // [(2;1,1)]
        assert_eq!(cf("[0;(1,2)]").classify(), StrictlyPeriodic);
        assert_eq!(cf("[2;(1,3)]").classify(), EssentiallyStrictlyPeriodic);
        assert_eq!(cf("[0;1,(1,1,2)]").classify(), EssentiallyStrictlyPeriodic);
        assert_eq!(cf("[3;(1,2)]").classify(), EventuallyPeriodic);
        // [0;2,1,(3,1)] canonicalises to [0;2,(1,3)], which satisfies the
        // reciprocal-side rule 2 <= 3.
        assert_eq!(cf("[0;2,1,(3,1)]").classify(), EssentiallyStrictlyPeriodic);
        assert_eq!(cf("[0;4,(1,3)]").classify(), EventuallyPeriodic);
        assert_eq!(cf("[0;2,2,(1,3)]").classify(), EventuallyPeriodic);
        assert_eq!(cf("[1;2,2,2]").classify(), Finite);
    }

    #[test]
    fn zero_quotient_absorption() {
        // [(1;2,0,3)] stored as a0=1 with period (2,0,3,1).
        let x = ContinuedFraction::absorb_zero_quotients(
            big(1),
            vec![],
            vec![big(2), big(0), big(3), big(1)],
        )
        .unwrap();
        assert_eq!(x, cf("[1;(5,1)]"));
        // [(2;1,1,0)] = [2;(1,3)]
        let y = ContinuedFraction::absorb_zero_quotients(
            big(2),
            vec![],
            vec![big(1), big(1), big(0), big(2)],
        )
        .unwrap();
        assert_eq!(y, cf("[2;(1,3)]"));
        // [0;(a1,...,a_{s-1},0)] = [0;a1,(a2,...,a_{s-1}+a1)]
        let z = ContinuedFraction::absorb_zero_quotients(
            big(0),
            vec![],
            vec![big(1), big(2), big(3), big(0)],
        )
        .unwrap();
        assert_eq!(z, cf("[0;1,(2,4)]"));
        // finite case
        let w = ContinuedFraction::absorb_zero_quotients(big(1), vec![big(2), big(0), big(3)], vec![]).unwrap();
        assert_eq!(w, cf("[1;5]"));
    }

    #[test]
    fn surd_round_trips() {
        // [0;(1)] = (sqrt 5 - 1)/2 = (-1 + sqrt 5)/2
        let golden = cf("[0;(1)]").to_surd().unwrap();
        assert_eq!(golden, QuadraticSurd::new(big(-1), big(2), big(5)).unwrap());
        // [(2;)] = 1 + sqrt 2
        let silver = cf("[2;(2)]").to_surd().unwrap();
        assert_eq!(silver, QuadraticSurd::new(big(1), big(1), big(2)).unwrap());
        for s in ["[1;2,2,2]", "[0;(1)]", "[2;(2)]", "[3;(1,2)]", "[0;1,(1,1,2)]", "[7;(2,6)]"] {
            let x = cf(s);
            assert_eq!(surd_to_cf(&x.to_surd().unwrap(), 1000).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn oracle_multiplication_examples() {
        let two = Rational::from_integer(2);
        assert_eq!(cf("[0;(1)]").multiply_oracle(&two, 1000).unwrap(), cf("[1;(4)]"));
        assert_eq!(cf("[2;(2)]").multiply_oracle(&two, 1000).unwrap(), cf("[4;(1,4)]"));
        let half: Rational = "1/2".parse().unwrap();
        let x = cf("[1;(4)]").multiply_oracle(&half, 1000).unwrap();
        assert_eq!(x, cf("[0;(1)]"));
    }

    #[test]
    fn even_period_doubling() {
        let x = cf("[0;(1,2,3)]");
        let (a0, pre, per) = x.even_period_parts();
        assert_eq!(per.len(), 6);
        assert_eq!(ContinuedFraction::new(a0, pre, per).unwrap(), x);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["[3]", "[0;2]", "[1;2,3]", "[0;(1)]", "[4;2,(1,5)]"] {
            assert_eq!(cf(s).to_string(), s);
        }
    }
}
