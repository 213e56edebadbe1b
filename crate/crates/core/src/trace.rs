//! Cutting-sequence tracing: the geodesic from the imaginary axis to a
//! positive endpoint, cut against the Farey tessellation scaled by `1/d`,
//! read off as a continued fraction. Tracing against the `1/n` scaling
//! multiplies the endpoint's continued fraction by `n`.

use crate::{
    cf::surd_to_cf, farey, ContinuedFraction, Error, PeriodicityClass, QuadraticSurd, Rational,
    Result,
};
use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Quotient budget used by the fixed-signature entry points. Period detection
/// for quadratic endpoints fires long before this at desk scale.
const DEFAULT_MAX_QUOTIENTS: usize = 10_000;

/// Everything one bisection run produces: the partial quotients (with the
/// detected period, if any), the fan pivot vertices in order, and the terminal
/// vertex for rational endpoints. Vertices are in the unscaled coordinates of
/// the `1/d` tessellation.
struct TraceRun {
    quotients: Vec<BigInt>,
    period_start: Option<usize>,
    vertices: Vec<Rational>,
    terminal: Option<Rational>,
}

/// Bisects towards `x > 0` through the plain Farey tessellation starting from
/// the edge `(0, infinity)`. Steps that keep the right endpoint are `L`
/// letters (pivot = right endpoint), steps that keep the left endpoint are
/// `R` letters; maximal runs of one letter are fans and their lengths are the
/// partial quotients of `x`. Runs until the period is detected (or the
/// endpoint is hit for rational `x`) and at least `min_vertices` fan pivots
/// have been recorded.
fn run_trace(x: &QuadraticSurd, max_quotients: usize, min_vertices: usize) -> Result<TraceRun> {
    if x.sign() <= 0 {
        return Err(Error::NonPositive(x.to_string()));
    }
    let mut left = Rational::from_integer(0);
    let mut right = Rational::infinity();
    // The leading fan is an `L` fan around infinity, possibly empty (a0 = 0).
    let mut fan_is_left = true;
    let mut fan_len = BigInt::from(0);
    let mut vertices = vec![Rational::infinity()];
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut period_start: Option<usize> = None;
    let mut terminal: Option<Rational> = None;
    // Tail of the expansion after the quotients emitted so far; repetition of
    // its canonical form closes the period (Lagrange).
    let mut tail = x.clone();
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    if !x.is_rational() {
        seen.insert(tail.clone(), 0);
    }
    let mut close_fan = |quotients: &mut Vec<BigInt>,
                         fan_len: &BigInt,
                         tail: &mut QuadraticSurd,
                         period_start: &mut Option<usize>|
     -> Result<()> {
        quotients.push(fan_len.clone());
        if !tail.is_rational() && period_start.is_none() {
            *tail = tail.sub_int(fan_len).recip()?;
            if let Some(&j) = seen.get(tail) {
                *period_start = Some(j);
            } else {
                seen.insert(tail.clone(), quotients.len());
            }
        }
        Ok(())
    };
    loop {
        let done = terminal.is_some() || period_start.is_some();
        if done && vertices.len() >= min_vertices {
            break;
        }
        if terminal.is_some() {
            break; // rational endpoint reached; no further fans exist
        }
        if quotients.len() > max_quotients {
            return Err(Error::PeriodNotFound(max_quotients));
        }
        let m = farey::mediant(&left, &right)?;
        match x.cmp_rational(&m) {
            Ordering::Equal => {
                // The endpoint is the mediant itself: the final crossing
                // counts towards the current fan, then the trace stops.
                fan_len += 1u32;
                close_fan(&mut quotients, &fan_len, &mut tail, &mut period_start)?;
                terminal = Some(m);
            }
            Ordering::Greater => {
                // L step: keep the right endpoint.
                if !fan_is_left {
                    close_fan(&mut quotients, &fan_len, &mut tail, &mut period_start)?;
                    fan_is_left = true;
                    fan_len = BigInt::one();
                    vertices.push(right.clone());
                } else {
                    fan_len += 1u32;
                }
                left = m;
            }
            Ordering::Less => {
                // R step: keep the left endpoint.
                if fan_is_left {
                    close_fan(&mut quotients, &fan_len, &mut tail, &mut period_start)?;
                    fan_is_left = false;
                    fan_len = BigInt::one();
                    vertices.push(left.clone());
                } else {
                    fan_len += 1u32;
                }
                right = m;
            }
        }
    }
    Ok(TraceRun { quotients, period_start, vertices, terminal })
}

fn unscale(v: &Rational, d: u64) -> Result<Rational> {
    Rational::new(v.num().clone(), v.den() * BigInt::from(d))
}

/// The continued fraction of `d * alpha`, read off as the fan sizes of the
/// cutting sequence of the geodesic to `alpha` with the `1/d`-scaled
/// tessellation. Periods of quadratic endpoints are detected exactly; other
/// irrationals would exhaust `max_quotients`.
pub fn trace(alpha: &QuadraticSurd, d: u64, max_quotients: usize) -> Result<ContinuedFraction> {
    if d == 0 {
        return Err(Error::NonPositive("scale 0".into()));
    }
    let x = alpha.mul_int(&BigInt::from(d))?;
    let run = run_trace(&x, max_quotients, 0)?;
    let mut quotients = run.quotients;
    let (a0, pre, period) = match run.period_start {
        // Purely periodic: the repeat closed back onto the whole expansion,
        // so the leading quotient re-appears at the end of the period.
        Some(0) => {
            let mut period = quotients;
            let a0 = period[0].clone();
            period.rotate_left(1);
            (a0, Vec::new(), period)
        }
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

/// Multiplication by the positive integer `n` computed geometrically, by
/// tracing the value's geodesic against the `1/n`-scaled tessellation.
pub fn multiply_nbar(cf: &ContinuedFraction, n: u64) -> Result<ContinuedFraction> {
    trace(&cf.to_surd()?, n, DEFAULT_MAX_QUOTIENTS)
}

/// The common vertex of each fan of the trace, in order, starting with
/// infinity (the pivot of the leading `L` fan). For rational endpoints the
/// terminal vertex is appended after the last pivot. Vertices are in the
/// coordinates of the `1/d` tessellation (denominators carry the factor `d`).
pub fn convergent_vertices(alpha: &QuadraticSurd, d: u64, count: usize) -> Result<Vec<Rational>> {
    if d == 0 {
        return Err(Error::NonPositive("scale 0".into()));
    }
    let x = alpha.mul_int(&BigInt::from(d))?;
    let run = run_trace(&x, DEFAULT_MAX_QUOTIENTS.max(count + 2), count)?;
    let mut out = Vec::new();
    for v in run.vertices.iter().take(count) {
        out.push(unscale(v, d)?);
    }
    if let Some(t) = &run.terminal {
        out.push(unscale(t, d)?);
    }
    Ok(out)
}

/// Whether the geodesic with this endpoint closes up on the quotient
/// orbifold: true exactly for the strictly and essentially strictly periodic
/// classes.
pub fn is_closed_curve(cf: &ContinuedFraction) -> bool {
    matches!(
        cf.classify(),
        PeriodicityClass::StrictlyPeriodic | PeriodicityClass::EssentiallyStrictlyPeriodic
    )
}

/// Checks the fan-vertex law on a trace: pivots of consecutive fans are
/// tessellation neighbours at scale `1/d` (each fan's vertex bounds both its
/// entry and exit edges). Used by property tests.
pub fn fan_vertices_are_neighbours(vertices: &[Rational], d: u64) -> bool {
    vertices
        .windows(2)
        .all(|w| farey::is_neighbor_scaled(&w[0], &w[1], d))
}

/// Re-expansion of a surd for cross-checks: identical to the algebraic path.
pub fn surd_cf(x: &QuadraticSurd, max_quotients: usize) -> Result<ContinuedFraction> {
    surd_to_cf(x, max_quotients)
}
