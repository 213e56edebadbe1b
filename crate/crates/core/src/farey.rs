//! Combinatorics of the Farey tessellation and its scaled copies: the
//! neighbour relation, mediants, and the fan-splitting counts describing how
//! the two tessellations interleave around a common vertex.

use crate::{Error, Rational, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

/// An unordered tessellation edge `{a, b}` at a given scale: `a` and `b` are
/// joined in (1/scale) times the Farey tessellation. Stored with `a < b`
/// (infinity greatest) for canonical hashing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FareyEdge {
    pub a: Rational,
    pub b: Rational,
    pub scale: u64,
}

impl FareyEdge {
    pub fn new(a: Rational, b: Rational, scale: u64) -> Self {
        if a <= b {
            Self { a, b, scale }
        } else {
            Self { a: b, b: a, scale }
        }
    }
}

/// Whether `a` and `b` are joined by an edge of the Farey tessellation:
/// `|p s - q r| = 1` for reduced `p/q`, `r/s` (infinity is 1/0).
pub fn is_neighbor(a: &Rational, b: &Rational) -> bool {
    (a.num() * b.den() - b.num() * a.den()).abs().is_one()
}

/// Whether `a` and `b` are joined at scale `1/n`, i.e. `na` and `nb` reduce to
/// Farey neighbours.
pub fn is_neighbor_scaled(a: &Rational, b: &Rational, n: u64) -> bool {
    let n = BigInt::from(n);
    match (a.scale_int(&n), b.scale_int(&n)) {
        (Ok(sa), Ok(sb)) => is_neighbor(&sa, &sb),
        _ => false,
    }
}

/// Farey sum `(p + r)/(q + s)`: the third vertex of the triangle on one side
/// of the edge `{a, b}`. Requires the two to be neighbours.
pub fn mediant(a: &Rational, b: &Rational) -> Result<Rational> {
    if !is_neighbor(a, b) {
        return Err(Error::NotNeighbours(a.to_string(), b.to_string()));
    }
    Rational::new(a.num() + b.num(), a.den() + b.den())
}

/// Farey difference `(p - r)/(q - s)`: the third vertex of the triangle on the
/// other side of the edge `{a, b}`.
pub fn farey_sub(a: &Rational, b: &Rational) -> Result<Rational> {
    if !is_neighbor(a, b) {
        return Err(Error::NotNeighbours(a.to_string(), b.to_string()));
    }
    Rational::new(a.num() - b.num(), a.den() - b.den())
}

/// Whether `a` and `b` are neighbours in both the Farey tessellation and its
/// `1/n` scaling, decided by the closed-form criterion: writing the reduced
/// denominators as `c*n1` with `n1 = gcd(den(a), n)` and `d*n2` with
/// `n2 = n/n1`, the pair qualifies exactly when `|num(a) d n2 - num(b) c n1| = 1`.
pub fn neighbors_in_both(a: &Rational, b: &Rational, n: u64) -> bool {
    let n_big = BigInt::from(n);
    let n1 = a.den().gcd(&n_big);
    let n2 = &n_big / &n1;
    if !b.den().is_multiple_of(&n2) {
        return false;
    }
    let c = a.den() / &n1;
    let d = b.den() / &n2;
    (a.num() * d * n2 - b.num() * c * n1).abs().is_one()
}

/// For a vertex shared by both tessellations: between two consecutive common
/// edges at the vertex there are `n2 - 1` plain Farey edges and `n1 - 1`
/// scaled edges, where `n1 = gcd(den, n)` and `n2 = n/n1`. Returns
/// `(unscaled, scaled)`.
pub fn fan_split_counts(v: &Rational, n: u64) -> (u64, u64) {
    let n_big = BigInt::from(n);
    let n1: u64 = v
        .den()
        .gcd(&n_big)
        .try_into()
        .expect("gcd bounded by n");
    let n1 = if v.is_infinite() { n } else { n1 };
    let n2 = n / n1;
    (n2 - 1, n1 - 1)
}

/// `n * a` in reduced form (valid for infinity).
pub fn scale(a: &Rational, n: u64) -> Rational {
    a.scale_int(&BigInt::from(n)).expect("scaling cannot produce 0/0")
}

/// The two third vertices of the triangles adjacent to the edge `{a, b}` at
/// scale `1/n`: the scaled mediant and scaled Farey difference, mapped back.
pub fn scaled_triangle_apexes(a: &Rational, b: &Rational, n: u64) -> Result<(Rational, Rational)> {
    let (sa, sb) = (scale(a, n), scale(b, n));
    let m = mediant(&sa, &sb)?;
    let f = farey_sub(&sa, &sb)?;
    let unscale = |x: &Rational| Rational::new(x.num().clone(), x.den() * BigInt::from(n));
    Ok((unscale(&m)?, unscale(&f)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn neighbour_relation_includes_infinity() {
        assert!(is_neighbor(&r("1/0"), &r("3/1")));
        assert!(!is_neighbor(&r("1/0"), &r("1/2")));
        assert!(is_neighbor(&r("1/2"), &r("1/3")));
        assert!(!is_neighbor(&r("1/2"), &r("1/4")));
    }

    #[test]
    fn mediant_and_difference() {
        assert_eq!(mediant(&r("0/1"), &r("1/0")).unwrap(), r("1/1"));
        assert_eq!(farey_sub(&r("0/1"), &r("1/0")).unwrap(), r("-1/1"));
        assert_eq!(mediant(&r("1/2"), &r("2/3")).unwrap(), r("3/5"));
        assert!(mediant(&r("1/2"), &r("1/4")).is_err());
    }

    #[test]
    fn common_neighbour_criterion() {
        assert!(neighbors_in_both(&r("1/2"), &r("1/1"), 2));
        assert!(neighbors_in_both(&r("1/2"), &r("1/3"), 6));
        assert!(!neighbors_in_both(&r("1/2"), &r("2/3"), 5));
        // brute force agreement on a small window
        for n in 2..=8u64 {
            for qa in 1..=6i64 {
                for pa in 0..=qa {
                    for qb in 1..=6i64 {
                        for pb in 0..=qb {
                            let a = Rational::new(pa.into(), qa.into()).unwrap();
                            let b = Rational::new(pb.into(), qb.into()).unwrap();
                            let brute = is_neighbor(&a, &b) && is_neighbor_scaled(&a, &b, n);
                            assert_eq!(neighbors_in_both(&a, &b, n), brute, "{a} {b} {n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fan_counts_match_the_three_cases() {
        assert_eq!(fan_split_counts(&r("1/6"), 6), (0, 5)); // denominator divisible by n
        assert_eq!(fan_split_counts(&r("1/5"), 6), (5, 0)); // coprime denominator
        assert_eq!(fan_split_counts(&r("1/2"), 6), (2, 1)); // mixed case
        assert_eq!(fan_split_counts(&Rational::infinity(), 6), (0, 5));
    }
}
