//! Fundamental-domain combinatorics for the Hecke congruence groups Γ₀(n).
//!
//! A *Farey symbol* for Γ₀(n) is a finite list of Farey fractions
//! `∞, 0, x_1, …, x_{r-1}, 1, ∞` together with a label on each consecutive
//! interval.  Labels are `Even`, `Odd`, or `Free(k)` (the latter appearing in
//! matched pairs).  Each labelled interval carries a side-pairing matrix in
//! Γ₀(n), and the labelled hyperbolic polygon over the vertex list is a
//! fundamental domain for Γ₀(n).

pub mod tile;
pub mod walk;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::matrix::Mat2;
use crate::rational::Rational;
use crate::{Error, Result};

/// Label attached to one interval of a Farey symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalLabel {
    /// Paired with the other interval carrying the same id (1-based).
    Free(u32),
    /// Self-paired by an elliptic element of order 2.
    Even,
    /// Self-paired by an elliptic element of order 3.
    Odd,
}

impl Serialize for IntervalLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IntervalLabel::Even => serializer.serialize_str("even"),
            IntervalLabel::Odd => serializer.serialize_str("odd"),
            IntervalLabel::Free(k) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("free", k)?;
                map.end()
            }
        }
    }
}

impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalLabel::Even => write!(f, "even"),
            IntervalLabel::Odd => write!(f, "odd"),
            IntervalLabel::Free(k) => write!(f, "free({k})"),
        }
    }
}

/// A validated Farey symbol for Γ₀(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareySymbol {
    n: u64,
    /// `∞, 0, …, 1, ∞` — the first entry plays the role of −1/0.
    vertices: Vec<Rational>,
    /// One label per consecutive vertex pair; `labels.len() == vertices.len() - 1`.
    labels: Vec<IntervalLabel>,
}

impl Serialize for FareySymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FareySymbol", 3)?;
        st.serialize_field("n", &self.n)?;
        let verts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        st.serialize_field("vertices", &verts)?;
        st.serialize_field("labels", &self.labels)?;
        st.end()
    }
}

impl fmt::Display for FareySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ ")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.is_infinite() {
                write!(f, "oo")?;
            } else if v.den().is_one() {
                write!(f, "{}", v.num())?;
            } else {
                write!(f, "{}", v)?;
            }
            if i + 1 < self.vertices.len() {
                match self.labels[i] {
                    IntervalLabel::Even => write!(f, " o ")?,
                    IntervalLabel::Odd => write!(f, " . ")?,
                    IntervalLabel::Free(k) => write!(f, " {k} ")?,
                }
            }
        }
        write!(f, " }}")
    }
}

impl FareySymbol {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn vertices(&self) -> &[Rational] {
        &self.vertices
    }

    pub fn labels(&self) -> &[IntervalLabel] {
        &self.labels
    }

    pub fn interval_count(&self) -> usize {
        self.labels.len()
    }

    /// Endpoints of interval `i` as `(left, right)`.
    pub fn interval(&self, i: usize) -> (&Rational, &Rational) {
        (&self.vertices[i], &self.vertices[i + 1])
    }

    /// Index of the partner interval: `i` itself for even/odd labels.
    pub fn partner(&self, i: usize) -> usize {
        match self.labels[i] {
            IntervalLabel::Even | IntervalLabel::Odd => i,
            IntervalLabel::Free(k) => self
                .labels
                .iter()
                .position(|l| *l == IntervalLabel::Free(k) && self.labels[i] == *l)
                .map(|first| {
                    if first == i {
                        self.labels
                            .iter()
                            .rposition(|l| *l == IntervalLabel::Free(k))
                            .expect("free labels come in pairs")
                    } else {
                        first
                    }
                })
                .expect("free labels come in pairs"),
        }
    }

    /// Group index of Γ₀(n) in the modular group, read off the symbol.
    pub fn index_from_symbol(&self) -> u64 {
        let finite_intervals = (self.labels.len() - 2) as u64;
        let odd = self
            .labels
            .iter()
            .filter(|l| matches!(l, IntervalLabel::Odd))
            .count() as u64;
        3 * finite_intervals + odd
    }

    /// Homogeneous coordinates `(a, b)` of vertex `k`, with the leading ∞ as −1/0.
    fn vertex_coords(&self, k: usize) -> (BigInt, BigInt) {
        let v = &self.vertices[k];
        if v.is_infinite() {
            if k == 0 {
                (BigInt::from(-1), BigInt::zero())
            } else {
                (BigInt::one(), BigInt::zero())
            }
        } else {
            (v.num().clone(), v.den().clone())
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut a = 1;
    while a * a <= n {
        if n % a == 0 {
            small.push(a);
            if a * a != n {
                large.push(n / a);
            }
        }
        a += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in distinct_prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

/// Combinatorial invariants of the modular curve X₀(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gamma0Invariants {
    pub n: u64,
    /// Index of Γ₀(n) in PSL₂(ℤ).
    pub d: u64,
    /// Number of cusps.
    pub t: u64,
    /// Number of elliptic points of order 2.
    pub e2: u64,
    /// Number of elliptic points of order 3.
    pub e3: u64,
    /// Genus of X₀(n).
    pub g: u64,
}

/// Index of Γ₀(n): `n · ∏_{p | n} (1 + 1/p)` over distinct primes.
pub fn index(n: u64) -> u64 {
    let mut num = n;
    for p in distinct_prime_factors(n) {
        num = num / p * (p + 1);
    }
    num
}

/// Number of cusps of Γ₀(n): `Σ_{a | n} φ(gcd(a, n/a))`.
pub fn cusp_count(n: u64) -> u64 {
    divisors(n).iter().map(|&a| euler_phi(a.gcd(&(n / a)))).sum()
}

const MAX_SYMBOL_VERTICES: usize = 100_000;

/// Build a Farey symbol for Γ₀(n) by Kulkarni's subdivision algorithm.
///
/// Starting from the vertex list `∞, 0, 1, ∞` with the two boundary
/// intervals paired (realizing z ↦ z + 1), each unlabelled interval is
/// tested for the odd, even, and free-pair denominator congruences in that
/// priority, scanning left to right; intervals that admit no label are
/// subdivided at the mediant, and the process repeats until every interval
/// is labelled.
pub fn build_farey_symbol(n: u64) -> Result<FareySymbol> {
    if n < 2 {
        return Err(Error::LevelTooSmall);
    }
    // Subdividing the leftmost unlabellable interval together with its
    // mirror image preserves the mirror symmetry of the vertex list (which
    // prime levels require), but some composite levels (the first is 8)
    // admit only asymmetric symbols and that strategy never terminates;
    // those fall back to subdividing one interval at a time, leftmost
    // first. Both passes are deterministic.
    match try_build_symbol(n, true) {
        Ok(symbol) => Ok(symbol),
        Err(Error::SymbolDiverged(_)) => try_build_symbol(n, false),
        Err(e) => Err(e),
    }
}

fn try_build_symbol(n: u64, mirror: bool) -> Result<FareySymbol> {
    let big_n = BigInt::from(n);
    // Reduced denominator of each vertex (0 for both copies of infinity).
    let den_of = |v: &Rational| -> BigInt {
        if v.is_infinite() {
            BigInt::zero()
        } else {
            v.den().clone()
        }
    };

    let mut vertices = vec![
        Rational::infinity(),
        Rational::zero(),
        Rational::from_integer(1),
        Rational::infinity(),
    ];
    let mut labels: Vec<Option<IntervalLabel>> =
        vec![Some(IntervalLabel::Free(1)), None, Some(IntervalLabel::Free(1))];
    let mut next_free_id: u32 = 2;

    loop {
        // Labelling passes: repeat until no interval gains a label.
        loop {
            let mut changed = false;
            for i in 0..labels.len() {
                if labels[i].is_some() {
                    continue;
                }
                let bi = den_of(&vertices[i]);
                let bj = den_of(&vertices[i + 1]);
                let odd = (&bi * &bi + &bi * &bj + &bj * &bj) % &big_n;
                if odd.is_zero() {
                    labels[i] = Some(IntervalLabel::Odd);
                    changed = true;
                    continue;
                }
                let even = (&bi * &bi + &bj * &bj) % &big_n;
                if even.is_zero() {
                    labels[i] = Some(IntervalLabel::Even);
                    changed = true;
                    continue;
                }
                // Earliest unlabelled partner satisfying the free congruence.
                let mut partner = None;
                for j in 0..labels.len() {
                    if j == i || labels[j].is_some() {
                        continue;
                    }
                    let bu = den_of(&vertices[j]);
                    let bw = den_of(&vertices[j + 1]);
                    if ((&bi * &bu + &bj * &bw) % &big_n).is_zero() {
                        partner = Some(j);
                        break;
                    }
                }
                if let Some(j) = partner {
                    labels[i] = Some(IntervalLabel::Free(next_free_id));
                    labels[j] = Some(IntervalLabel::Free(next_free_id));
                    next_free_id += 1;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        if labels.iter().all(|l| l.is_some()) {
            break;
        }

        // Subdivide the leftmost unlabellable interval at its mediant,
        // together with its mirror interval in the symmetric pass.
        let i = labels.iter().position(|l| l.is_none()).expect("unlabelled interval exists");
        let mut targets = vec![i];
        if mirror {
            let j = labels.len() - 1 - i;
            if j != i && labels[j].is_none() {
                targets.push(j);
            }
        }
        targets.sort_unstable();
        for &i in targets.iter().rev() {
            let m = crate::farey::mediant(&vertices[i], &vertices[i + 1])?;
            vertices.insert(i + 1, m);
            labels.insert(i, None);
        }
        // A finished symbol has at most index(n)/3 + e3 + 2 intervals and
        // intervals never merge, so exceeding the index means divergence.
        if vertices.len() > MAX_SYMBOL_VERTICES.min(index(n) as usize + 8) {
            return Err(Error::SymbolDiverged(n));
        }
    }

    let symbol = FareySymbol {
        n,
        vertices,
        labels: labels.into_iter().map(|l| l.unwrap()).collect(),
    };
    // Consecutive vertices must be Farey neighbours (the boundary pairs
    // (∞,0) and (1,∞) are neighbours by convention).
    for i in 0..symbol.interval_count() {
        let (u, w) = symbol.interval(i);
        if !u.is_infinite() && !w.is_infinite() && !crate::farey::is_neighbor(u, w) {
            return Err(Error::SymbolDiverged(n));
        }
    }
    if symbol.index_from_symbol() != index(n) {
        return Err(Error::SymbolDiverged(n));
    }
    // Every pairing matrix must validate (membership, determinant, orders).
    for i in 0..symbol.interval_count() {
        pairing_matrix(&symbol, i)?;
    }
    Ok(symbol)
}

/// Does `m` send the projective point `(a, b)` to `(c, d)`?
fn maps_projective(m: &Mat2, from: &(BigInt, BigInt), to: &(BigInt, BigInt)) -> bool {
    let ia = m.a() * &from.0 + m.b() * &from.1;
    let ib = m.c() * &from.0 + m.d_entry() * &from.1;
    (&ia * &to.1 - &ib * &to.0).is_zero() && !(ia.is_zero() && ib.is_zero())
}

/// Side-pairing matrix of interval `i` of a Farey symbol.
///
/// For a free pair (i, j) the matrix sends x_i ↦ x_{j+1} and x_{i+1} ↦ x_j;
/// for an even interval it swaps the two endpoints (order 2); for an odd
/// interval it cycles x_i ↦ x_{i+1} ↦ mediant ↦ x_i (order 3 in PSL₂).
pub fn pairing_matrix(symbol: &FareySymbol, i: usize) -> Result<Mat2> {
    if i >= symbol.interval_count() {
        return Err(Error::Parse(format!(
            "interval index {i} out of range for symbol with {} intervals",
            symbol.interval_count()
        )));
    }
    let (ai, bi) = symbol.vertex_coords(i);
    let (ai1, bi1) = symbol.vertex_coords(i + 1);
    // Coordinates of the partner interval (x_j, x_{j+1}).
    let ((aj, bj), (aj1, bj1), order) = match symbol.labels[i] {
        IntervalLabel::Free(_) => {
            let j = symbol.partner(i);
            (symbol.vertex_coords(j), symbol.vertex_coords(j + 1), None)
        }
        IntervalLabel::Even => ((ai.clone(), bi.clone()), (ai1.clone(), bi1.clone()), Some(2)),
        IntervalLabel::Odd => (
            (&ai + &ai1, &bi + &bi1),
            (ai1.clone(), bi1.clone()),
            Some(3),
        ),
    };
    let candidate = Mat2::new(
        &aj * &bi + &aj1 * &bi1,
        -(&ai * &aj) - &ai1 * &aj1,
        &bi * &bj + &bj1 * &bi1,
        -(&ai * &bj) - &ai1 * &bj1,
    );
    let candidate = if candidate.det() == BigInt::from(-1) {
        candidate.negate_second_column()
    } else {
        candidate
    };
    // Canonical projective representative: lower-left positive, or else
    // upper-left positive.
    let candidate = if candidate.c().is_negative()
        || (candidate.c().is_zero() && candidate.a().is_negative())
    {
        candidate.neg()
    } else {
        candidate
    };

    // Authoritative checks: vertex mapping, membership, and pairing order.
    let from_i = (ai.clone(), bi.clone());
    let from_i1 = (ai1.clone(), bi1.clone());
    let ok = maps_projective(&candidate, &from_i, &(aj1, bj1))
        && maps_projective(&candidate, &from_i1, &(aj, bj))
        && candidate.is_in_gamma0(symbol.n);
    if !ok {
        return Err(Error::Parse(format!(
            "pairing matrix for interval {i} of the level-{} symbol failed validation",
            symbol.n
        )));
    }
    if let Some(ord) = order {
        if candidate.projective_order() != Some(ord) {
            return Err(Error::Parse(format!(
                "pairing matrix for interval {i} of the level-{} symbol has wrong order",
                symbol.n
            )));
        }
    }
    Ok(candidate)
}

/// All side-pairing matrices of a symbol, indexed by interval.
pub fn pairing_matrices(symbol: &FareySymbol) -> Result<Vec<Mat2>> {
    (0..symbol.interval_count())
        .map(|i| pairing_matrix(symbol, i))
        .collect()
}

/// Invariants of X₀(n), cross-checked three ways: closed formulas for the
/// index and cusp count, elliptic counts read off the Farey symbol, and the
/// genus from d = 12g − 12 + 3e₂ + 4e₃ + 6t.
pub fn invariants(n: u64) -> Result<Gamma0Invariants> {
    let symbol = build_farey_symbol(n)?;
    invariants_from_symbol(&symbol)
}

/// Same as [`invariants`], reusing an already-built symbol.
pub fn invariants_from_symbol(symbol: &FareySymbol) -> Result<Gamma0Invariants> {
    let n = symbol.n;
    let d = index(n);
    let t = cusp_count(n);
    let e2 = symbol
        .labels
        .iter()
        .filter(|l| matches!(l, IntervalLabel::Even))
        .count() as u64;
    let e3 = symbol
        .labels
        .iter()
        .filter(|l| matches!(l, IntervalLabel::Odd))
        .count() as u64;
    let rhs = d as i64 - 3 * e2 as i64 - 4 * e3 as i64 - 6 * t as i64 + 12;
    if rhs < 0 || rhs % 12 != 0 {
        return Err(Error::Parse(format!(
            "genus relation fails at level {n}: d={d}, e2={e2}, e3={e3}, t={t}"
        )));
    }
    Ok(Gamma0Invariants {
        n,
        d,
        t,
        e2,
        e3,
        g: (rhs / 12) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q)).unwrap()
    }

    #[test]
    fn level_7_symbol_matches_fixture() {
        let s = build_farey_symbol(7).unwrap();
        assert_eq!(
            s.vertices(),
            &[
                Rational::infinity(),
                rat(0, 1),
                rat(1, 2),
                rat(1, 1),
                Rational::infinity()
            ]
        );
        assert_eq!(
            s.labels(),
            &[
                IntervalLabel::Free(1),
                IntervalLabel::Odd,
                IntervalLabel::Odd,
                IntervalLabel::Free(1)
            ]
        );
        assert_eq!(s.index_from_symbol(), 8);
    }

    #[test]
    fn level_2_and_3_symbols() {
        let s2 = build_farey_symbol(2).unwrap();
        assert_eq!(s2.labels(), &[
            IntervalLabel::Free(1),
            IntervalLabel::Even,
            IntervalLabel::Free(1)
        ]);
        let s3 = build_farey_symbol(3).unwrap();
        assert_eq!(s3.labels(), &[
            IntervalLabel::Free(1),
            IntervalLabel::Odd,
            IntervalLabel::Free(1)
        ]);
    }

    #[test]
    fn boundary_pair_realizes_translation() {
        for n in 2..=20 {
            let s = build_farey_symbol(n).unwrap();
            let m = pairing_matrix(&s, 0).unwrap();
            assert_eq!(m, Mat2::from_i64(1, 1, 0, 1), "level {n}");
            let last = pairing_matrix(&s, s.interval_count() - 1).unwrap();
            assert_eq!(last, Mat2::from_i64(1, -1, 0, 1), "level {n}");
        }
    }

    #[test]
    fn free_pairs_are_mutually_inverse() {
        for n in [6, 10, 11, 13, 24, 36, 49] {
            let s = build_farey_symbol(n).unwrap();
            for i in 0..s.interval_count() {
                if let IntervalLabel::Free(_) = s.labels()[i] {
                    let j = s.partner(i);
                    assert_ne!(i, j, "free interval self-paired at level {n}");
                    let mi = pairing_matrix(&s, i).unwrap();
                    let mj = pairing_matrix(&s, j).unwrap();
                    assert!(mi.mul(&mj).is_projective_identity(), "level {n} pair {i},{j}");
                }
            }
        }
    }

    #[test]
    fn elliptic_orders() {
        for n in 2..=40 {
            let s = build_farey_symbol(n).unwrap();
            for i in 0..s.interval_count() {
                let m = pairing_matrix(&s, i).unwrap();
                match s.labels()[i] {
                    IntervalLabel::Even => assert_eq!(m.projective_order(), Some(2)),
                    IntervalLabel::Odd => assert_eq!(m.projective_order(), Some(3)),
                    IntervalLabel::Free(_) => assert_eq!(m.projective_order(), None),
                }
            }
        }
    }

    #[test]
    fn invariants_fixtures() {
        let i7 = invariants(7).unwrap();
        assert_eq!((i7.d, i7.t, i7.e2, i7.e3, i7.g), (8, 2, 0, 2, 0));
        let i11 = invariants(11).unwrap();
        assert_eq!((i11.d, i11.t, i11.e2, i11.e3, i11.g), (12, 2, 0, 0, 1));
        let i4 = invariants(4).unwrap();
        assert_eq!(i4.t, 3);
        assert_eq!((i4.e2, i4.e3), (0, 0));
    }

    #[test]
    fn prime_symbols_are_symmetric() {
        for n in [5u64, 7, 11, 13, 17, 19, 23, 29] {
            let s = build_farey_symbol(n).unwrap();
            let verts = s.vertices();
            let len = verts.len();
            let one = Rational::from_integer(1);
            for k in 1..len - 1 {
                let mirrored = one.checked_sub(&verts[len - 1 - k]).unwrap();
                assert_eq!(verts[k], mirrored, "level {n} vertex {k}");
            }
        }
    }

    #[test]
    fn level_too_small() {
        assert!(matches!(build_farey_symbol(1), Err(Error::LevelTooSmall)));
        assert!(matches!(build_farey_symbol(0), Err(Error::LevelTooSmall)));
    }
}
