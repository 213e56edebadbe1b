//! Cutting sequences traced inside a Γ₀(n) fundamental domain.
//!
//! The geodesic to a positive endpoint is cut against the `1/d`-scaled Farey
//! tessellation, exactly as in the plain trace, but each time the current
//! edge leaves the fundamental polygon of Γ₀(n) the state is pulled back by
//! the polygon's side-pairing matrices. Since the pairings preserve the
//! scaled tessellation (for `d | n`), the letters of the cutting sequence are
//! unchanged; the pullbacks keep every intermediate quantity bounded so that
//! periodicity can be detected by exact state recurrence.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{build_farey_symbol, pairing_matrices, FareySymbol, IntervalLabel};
use crate::matrix::Mat2;
use crate::rational::Rational;
use crate::surd::QuadraticSurd;
use crate::{farey, ContinuedFraction, Error, Result};

const DEFAULT_MAX_QUOTIENTS: usize = 10_000;
const MAX_PULLBACKS_PER_STEP: usize = 10_000;

/// A Γ₀(n) fundamental polygon with the data the walk needs: the Farey
/// symbol, the side-pairing matrices, their inverses, and the mediant of
/// every odd interval (where the polygon boundary turns at the order-3
/// fixed point).
struct Domain {
    symbol: FareySymbol,
    mats: Vec<Mat2>,
    inv_mats: Vec<Mat2>,
    odd_mediants: Vec<Option<Rational>>,
}

impl Domain {
    fn new(n: u64) -> Result<Self> {
        let symbol = build_farey_symbol(n)?;
        let mats = pairing_matrices(&symbol)?;
        let inv_mats = mats.iter().map(Mat2::inverse_unimodular).collect();
        let odd_mediants = (0..symbol.interval_count())
            .map(|i| match symbol.labels()[i] {
                IntervalLabel::Odd => {
                    let (u, w) = symbol.interval(i);
                    Some(farey::mediant(u, w).expect("symbol intervals are neighbours"))
                }
                _ => None,
            })
            .collect();
        Ok(Self { symbol, mats, inv_mats, odd_mediants })
    }

    /// The matrix that pulls the edge `{l, r}` one step back towards the
    /// polygon, or `None` when the edge already meets its closure.
    fn pullback(&self, l: &Rational, r: &Rational) -> Option<&Mat2> {
        let last = self.symbol.interval_count() - 1;
        let zero = Rational::zero();
        let one = Rational::from_integer(1);
        // Beyond the left vertical side (∞, 0).
        let far_left = |v: &Rational| v.is_infinite() || *v <= zero;
        if far_left(l) && far_left(r) && !edge_is(l, r, &Rational::infinity(), &zero) {
            return Some(&self.mats[0]);
        }
        // Beyond the right vertical side (1, ∞).
        let far_right = |v: &Rational| v.is_infinite() || *v >= one;
        if far_right(l) && far_right(r) && !edge_is(l, r, &one, &Rational::infinity()) {
            return Some(&self.mats[last]);
        }
        if l.is_infinite() || r.is_infinite() {
            return None;
        }
        for i in 1..last {
            let (u, w) = self.symbol.interval(i);
            let within = |v: &Rational| u <= v && v <= w;
            if !within(l) || !within(r) {
                continue;
            }
            match self.symbol.labels()[i] {
                IntervalLabel::Free(_) | IntervalLabel::Even => {
                    if !edge_is(l, r, u, w) {
                        return Some(&self.mats[i]);
                    }
                }
                IntervalLabel::Odd => {
                    let m = self.odd_mediants[i].as_ref().expect("odd interval has mediant");
                    if l <= m && r <= m {
                        return Some(&self.mats[i]);
                    }
                    if l >= m && r >= m {
                        return Some(&self.inv_mats[i]);
                    }
                }
            }
        }
        None
    }
}

fn edge_is(l: &Rational, r: &Rational, a: &Rational, b: &Rational) -> bool {
    (l == a && r == b) || (l == b && r == a)
}

/// Whether `x` lies strictly on the same side of the geodesic `{l, r}` as the
/// point `c` (one of the two triangle apexes over that edge).
fn same_side(l: &Rational, r: &Rational, c: &Rational, x: &QuadraticSurd) -> Result<bool> {
    if l.is_infinite() || r.is_infinite() {
        // Vertical geodesic at the finite endpoint.
        let f = if l.is_infinite() { r } else { l };
        let side_x = match x.cmp_rational(f) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => return Err(Error::WalkStuck),
        };
        let side_c = c > f; // c is finite here (apex of a vertical edge)
        Ok(side_x == side_c)
    } else {
        let (lo, hi) = if l <= r { (l, r) } else { (r, l) };
        let inside_x = match (x.cmp_rational(lo), x.cmp_rational(hi)) {
            (Ordering::Greater, Ordering::Less) => true,
            (Ordering::Equal, _) | (_, Ordering::Equal) => return Err(Error::WalkStuck),
            _ => false,
        };
        let inside_c = !c.is_infinite() && c > lo && c < hi;
        Ok(inside_x == inside_c)
    }
}

/// Whether `x` lies in the open circular arc between `a` and `b` (on the
/// boundary circle ℝ ∪ {∞}) that does not contain `avoid`.
fn in_arc(a: &Rational, b: &Rational, avoid: &Rational, x: &QuadraticSurd) -> bool {
    let gt = |v: &Rational| x.cmp_rational(v) == Ordering::Greater;
    let lt = |v: &Rational| x.cmp_rational(v) == Ordering::Less;
    if a.is_infinite() || b.is_infinite() {
        let f = if a.is_infinite() { b } else { a };
        // Arcs at ∞ split the line at f; avoid is finite (triangle vertex).
        if avoid > f {
            lt(f)
        } else {
            gt(f)
        }
    } else {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let between = gt(lo) && lt(hi);
        if avoid.is_infinite() || avoid < lo || avoid > hi {
            between
        } else {
            !between
        }
    }
}

/// Continued fraction of `d * alpha`, read off the cutting sequence of the
/// geodesic to `alpha` against the `1/d`-scaled tessellation while folding
/// the walk into the Γ₀(n) fundamental domain. Requires `d | n`; the result
/// is independent of `n` and equals the plain trace of `d * alpha`.
pub fn walk_cutting_sequence(
    alpha: &QuadraticSurd,
    n: u64,
    d: u64,
    max_quotients: usize,
) -> Result<ContinuedFraction> {
    if d == 0 {
        return Err(Error::NonPositive("scale 0".into()));
    }
    if n % d != 0 {
        return Err(Error::ScaleDoesNotDivide(d, n));
    }
    if alpha.sign() <= 0 {
        return Err(Error::NonPositive(alpha.to_string()));
    }
    let domain = Domain::new(n)?;

    let mut l = Rational::infinity();
    let mut r = Rational::zero();
    let mut x = alpha.clone();
    let mut fan_is_left = true;
    let mut fan_len = BigInt::from(0);
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut period_start: Option<usize> = None;
    let mut pullbacks_enabled = true;
    // Fan-boundary states: (edge, endpoint, letter of the fan about to open)
    // seen at each quotient index. Recurrence closes the period.
    let mut seen: HashMap<(Rational, Rational, QuadraticSurd, bool), usize> = HashMap::new();

    let mut crossings = 0usize;
    while period_start.is_none() {
        crossings += 1;
        if quotients.len() > max_quotients || crossings > max_quotients.saturating_mul(1_000) {
            return Err(Error::PeriodNotFound(max_quotients));
        }
        let (med, sub) = farey::scaled_triangle_apexes(&l, &r, d)?;
        let c = if same_side(&l, &r, &med, &x)? { med } else { sub };
        if !c.is_infinite() && x.cmp_rational(&c) == Ordering::Equal {
            // Endpoint reached at the forward apex; the final crossing counts
            // towards the current fan.
            fan_len += 1u32;
            quotients.push(fan_len.clone());
            break;
        }
        let step_is_left = in_arc(&l, &c, &r, &x);
        if step_is_left != fan_is_left {
            // Fan boundary: close the finished fan and test for recurrence.
            quotients.push(fan_len.clone());
            if !x.is_rational() && period_start.is_none() {
                let key = (l.clone(), r.clone(), x.clone(), step_is_left);
                if let Some(&j) = seen.get(&key) {
                    period_start = Some(j);
                    break;
                }
                seen.insert(key, quotients.len());
            }
            fan_is_left = step_is_left;
            fan_len = BigInt::one();
        } else {
            fan_len += 1u32;
        }
        if step_is_left {
            r = c; // keep the travel-left endpoint, pivoting around it
        } else {
            l = c;
        }
        // Fold the new edge back into the fundamental domain.
        if pullbacks_enabled {
            let mut steps = 0usize;
            while let Some(g) = domain.pullback(&l, &r) {
                match x.mobius(g) {
                    Ok(nx) => x = nx,
                    // A rational endpoint can be carried to the cusp at ∞,
                    // which the surd type cannot hold; the un-folded walk
                    // still terminates, so stop normalizing.
                    Err(_) if x.is_rational() => {
                        pullbacks_enabled = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
                l = g.apply(&l)?;
                r = g.apply(&r)?;
                steps += 1;
                if steps > MAX_PULLBACKS_PER_STEP {
                    return Err(Error::WalkStuck);
                }
            }
        }
    }

    let mut quotients = quotients;
    let (a0, pre, period) = match period_start {
        Some(j) => {
            let period = quotients.split_off(j);
            let a0 = quotients.remove(0);
            (a0, quotients, period)
        }
        None => {
            let a0 = quotients.remove(0);
            (a0, quotients, Vec::new())
        }
    };
    ContinuedFraction::new(a0, pre, period)
}

/// Multiplication by `n` computed by walking the value's geodesic through the
/// Γ₀(n) fundamental domain against the `1/n`-scaled tessellation.
pub fn tile_walk_multiply(cf: &ContinuedFraction, n: u64) -> Result<ContinuedFraction> {
    walk_cutting_sequence(&cf.to_surd()?, n, n, DEFAULT_MAX_QUOTIENTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;
    use crate::trace::multiply_nbar;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn walk_at_scale_one_is_the_identity() {
        for n in [2u64, 5, 7] {
            for s in ["[0;(1)]", "[2;(2)]", "[3;(1,2)]", "[0;2,(1,1,2)]", "[1;2,3]"] {
                let x = cf(s).to_surd().unwrap();
                assert_eq!(walk_cutting_sequence(&x, n, 1, 10_000).unwrap(), cf(s), "{s} at level {n}");
            }
        }
    }

    #[test]
    fn rational_walk_in_level_two_domain() {
        let x = QuadraticSurd::from_rational(&rat("3/4")).unwrap();
        assert_eq!(walk_cutting_sequence(&x, 2, 2, 100).unwrap(), cf("[1;2]"));
    }

    #[test]
    fn golden_ratio_doubled_by_tile_walk() {
        assert_eq!(tile_walk_multiply(&cf("[0;(1)]"), 2).unwrap(), cf("[1;(4)]"));
    }

    #[test]
    fn tile_walk_matches_plain_trace() {
        for s in ["[0;(1)]", "[2;(2)]", "[3;(1,2)]", "[0;2,(1,1,2)]", "[1;2,3]"] {
            let x = cf(s);
            for n in [2u64, 3, 5, 7] {
                assert_eq!(
                    tile_walk_multiply(&x, n).unwrap(),
                    multiply_nbar(&x, n).unwrap(),
                    "{s} * {n}"
                );
            }
        }
    }

    #[test]
    fn scale_must_divide_level() {
        let x = cf("[0;(1)]").to_surd().unwrap();
        assert!(matches!(
            walk_cutting_sequence(&x, 7, 2, 100),
            Err(Error::ScaleDoesNotDivide(2, 7))
        ));
    }

    #[test]
    fn sqrt_two_times_three_through_the_domain() {
        // sqrt(2) = [1;(2)]; 3*sqrt(2) = sqrt(18) = [4;(4,8)].
        let x = QuadraticSurd::new(big(0), big(1), big(2)).unwrap();
        assert_eq!(walk_cutting_sequence(&x, 3, 3, 10_000).unwrap(), cf("[4;(4,8)]"));
    }
}
