//! Deterministic random corpora of continued fractions for the test and
//! verification campaigns. Every generator is a pure function of its seed.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{ContinuedFraction, PeriodicityClass};

/// Bounds used by all generators: quotients 1..=9, leading quotient 0..=9,
/// preperiod length 0..=4, period length 1..=6.
fn random_cf(rng: &mut ChaCha8Rng) -> ContinuedFraction {
    let a0 = BigInt::from(rng.gen_range(0..=9u32));
    let pre_len = rng.gen_range(0..=4usize);
    let period_len = rng.gen_range(1..=6usize);
    let pre: Vec<BigInt> = (0..pre_len)
        .map(|_| BigInt::from(rng.gen_range(1..=9u32)))
        .collect();
    let period: Vec<BigInt> = (0..period_len)
        .map(|_| BigInt::from(rng.gen_range(1..=9u32)))
        .collect();
    ContinuedFraction::new(a0, pre, period).expect("positive quotients are always valid")
}

fn filtered(seed: u64, count: usize, keep: impl Fn(&ContinuedFraction) -> bool) -> Vec<ContinuedFraction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let cf = random_cf(&mut rng);
        if keep(&cf) && !out.contains(&cf) {
            out.push(cf);
        }
    }
    out
}

/// Random eventually periodic continued fractions (all classes mixed).
pub fn eventually_periodic(seed: u64, count: usize) -> Vec<ContinuedFraction> {
    filtered(seed, count, |_| true)
}

/// Random strictly periodic continued fractions.
pub fn strictly_periodic(seed: u64, count: usize) -> Vec<ContinuedFraction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let period: Vec<BigInt> = (0..rng.gen_range(1..=6usize))
            .map(|_| BigInt::from(rng.gen_range(1..=9u32)))
            .collect();
        // Strict periodicity: either the reciprocal form [0;(...)] or the
        // form whose leading quotient closes the period.
        let a0 = if rng.gen_bool(0.5) {
            BigInt::from(0)
        } else {
            period.last().unwrap().clone()
        };
        let cf = ContinuedFraction::new(a0, vec![], period).expect("valid");
        if cf.classify() == PeriodicityClass::StrictlyPeriodic && !out.contains(&cf) {
            out.push(cf);
        }
    }
    out
}

/// Random essentially strictly periodic continued fractions (the class that
/// includes the strictly periodic ones).
pub fn essentially_strictly_periodic(seed: u64, count: usize) -> Vec<ContinuedFraction> {
    filtered(seed, count, |cf| {
        matches!(
            cf.classify(),
            PeriodicityClass::StrictlyPeriodic | PeriodicityClass::EssentiallyStrictlyPeriodic
        )
    })
}

/// Random eventually periodic continued fractions that are *not* essentially
/// strictly periodic.
pub fn eventually_periodic_only(seed: u64, count: usize) -> Vec<ContinuedFraction> {
    filtered(seed, count, |cf| cf.classify() == PeriodicityClass::EventuallyPeriodic)
}

/// Random finite (rational-valued) continued fractions with positive value.
pub fn finite(seed: u64, count: usize) -> Vec<ContinuedFraction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a0 = BigInt::from(rng.gen_range(0..=9u32));
        let pre: Vec<BigInt> = (0..rng.gen_range(0..=5usize))
            .map(|_| BigInt::from(rng.gen_range(1..=9u32)))
            .collect();
        if a0 == BigInt::from(0) && pre.is_empty() {
            continue; // zero is excluded (multiplication needs positive values)
        }
        let cf = ContinuedFraction::new(a0, pre, vec![]).expect("valid");
        if !out.contains(&cf) {
            out.push(cf);
        }
    }
    out
}
