//! Exact multiplication of continued fractions by rational factors, implemented
//! two independent ways: algebraically on quadratic surds, and geometrically as
//! cutting sequences of geodesics through scaled Farey tessellations and through
//! fundamental domains of the congruence groups Gamma_0(n).
//!
//! All arithmetic is exact (arbitrary-precision integers); there are no floats
//! anywhere on a result path.

pub mod cf;
pub mod corpus;
pub mod farey;
pub mod gamma0;
pub mod matrix;
pub mod rational;
pub mod surd;
pub mod theorems;
pub mod trace;
pub mod word;

pub use cf::{ContinuedFraction, Convergent, PeriodicityClass};
pub use farey::FareyEdge;
pub use gamma0::{build_farey_symbol, invariants, pairing_matrix, FareySymbol, Gamma0Invariants, IntervalLabel};
pub use gamma0::tile::{decorated_tile, DecoratedTile, TileFace, TriangleType};
pub use gamma0::walk::{tile_walk_multiply, walk_cutting_sequence};
pub use matrix::Mat2;
pub use rational::Rational;
pub use surd::QuadraticSurd;
pub use theorems::{
    find_evp_decomposition, scan_divisible_convergents, verify_exponential_growth, verify_pro2,
    ConvergentSide, EvpDecomposition, Pro2Witness,
};
pub use trace::{convergent_vertices, is_closed_curve, multiply_nbar, trace};
pub use word::CuttingWord;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("undefined rational 0/0")]
    ZeroOverZero,
    #[error("arithmetic on the point at infinity")]
    InfiniteOperand,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("zero denominator in surd")]
    ZeroSurdDenominator,
    #[error("expected a positive value, got {0}")]
    NonPositive(String),
    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbours(String, String),
    #[error("continued fraction has only {0} partial quotients")]
    NotEnoughQuotients(usize),
    #[error("no repetition found within {0} partial quotients")]
    PeriodNotFound(usize),
    #[error("scale {0} does not divide level {1}")]
    ScaleDoesNotDivide(u64, u64),
    #[error("level must be at least 2")]
    LevelTooSmall,
    #[error("valuation base must be at least 2")]
    BadValuationBase,
    #[error("symbol construction did not stabilise for level {0}")]
    SymbolDiverged(u64),
    #[error("walk failed to re-enter the fundamental domain")]
    WalkStuck,
    #[error("word is not reduced or has negative exponents")]
    UnreducedWord,
    #[error("no decomposition found with exponent at most {0}")]
    DecompositionExhausted(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("claimed relation violated: {0}")]
    TheoremViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Exponent of the largest power of `base` dividing `value`.
/// `value` must be non-zero and `base` at least 2.
pub fn padic_valuation(value: &BigInt, base: &BigInt) -> Result<u64> {
    if base < &BigInt::from(2) {
        return Err(Error::BadValuationBase);
    }
    if value.is_zero() {
        return Err(Error::NonPositive("0".into()));
    }
    let mut v = value.abs();
    let mut k = 0u64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&v, base);
        if !r.is_zero() {
            return Ok(k);
        }
        v = q;
        k += 1;
    }
}

pub(crate) fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub(crate) fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b).gcd(c)
}

/// Largest `g` dividing `bound` with `g*g` dividing `square_holder`.
pub(crate) fn square_divisor(bound: &BigInt, square_holder: &BigInt) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::one();
    let mut rest = bound.abs();
    if rest.is_zero() {
        return g;
    }
    let mut holder = square_holder.abs();
    let mut f = big(2);
    while &f * &f <= rest {
        if rest.is_multiple_of(&f) {
            let mut vb = 0u64;
            while rest.is_multiple_of(&f) {
                rest /= &f;
                vb += 1;
            }
            let mut vh = 0u64;
            while holder.is_multiple_of(&(&f * &f)) {
                holder /= &f * &f;
                vh += 1;
            }
            for _ in 0..vb.min(vh) {
                g *= &f;
            }
        }
        f += 1;
    }
    // `rest` is now 1 or a prime.
    if !rest.is_one() && holder.is_multiple_of(&(&rest * &rest)) {
        g *= &rest;
    }
    g
}
