//! End-to-end acceptance suite. Each numbered check prints one PASS/FAIL
//! line; the test fails if any check fails, but always reports all eleven.

use num_bigint::BigInt;

use fareymul::corpus;
use fareymul::gamma0::{self, pairing_matrices};
use fareymul::theorems::{scan_divisible_convergents, ConvergentSide};
use fareymul::{
    build_farey_symbol, find_evp_decomposition, invariants, multiply_nbar, tile_walk_multiply,
    verify_exponential_growth, verify_pro2, ContinuedFraction, CuttingWord, IntervalLabel,
    PeriodicityClass, Rational,
};
use fareymul::farey::{is_neighbor, is_neighbor_scaled, neighbors_in_both};
use fareymul::trace::convergent_vertices;

const SEED_MAIN: u64 = 11;
const SEED_SP: u64 = 12;
const SEED_ESP: u64 = 13;
const SEED_EVP_ONLY: u64 = 14;
const ORACLE_BUDGET: usize = 10_000;

fn cfp(s: &str) -> ContinuedFraction {
    s.parse().expect("fixture continued fraction parses")
}

fn rat(s: &str) -> Rational {
    s.parse().expect("fixture rational parses")
}

fn is_esp_plus(cf: &ContinuedFraction) -> bool {
    matches!(
        cf.classify(),
        PeriodicityClass::StrictlyPeriodic | PeriodicityClass::EssentiallyStrictlyPeriodic
    )
}

/// 1. The geometric trace and the surd oracle compute the same product on
///    200 random eventually periodic inputs for every n in 2..=12.
fn criterion_1() -> Result<(), String> {
    for cf in corpus::eventually_periodic(SEED_MAIN, 200) {
        for n in 2..=12u64 {
            let geometric = multiply_nbar(&cf, n).map_err(|e| format!("{cf} × {n}: {e}"))?;
            let oracle = cf
                .multiply_oracle(&Rational::from_integer(n), ORACLE_BUDGET)
                .map_err(|e| format!("{cf} × {n} oracle: {e}"))?;
            if geometric != oracle {
                return Err(format!("{cf} × {n}: trace {geometric} ≠ oracle {oracle}"));
            }
        }
    }
    Ok(())
}

/// 2. The fundamental-domain walk agrees with the plain trace on the same
///    corpus for n in {2, 3, 5, 7, 11}.
fn criterion_2() -> Result<(), String> {
    for cf in corpus::eventually_periodic(SEED_MAIN, 200) {
        for n in [2u64, 3, 5, 7, 11] {
            let walked = tile_walk_multiply(&cf, n).map_err(|e| format!("{cf} × {n}: {e}"))?;
            let traced = multiply_nbar(&cf, n).map_err(|e| format!("{cf} × {n}: {e}"))?;
            if walked != traced {
                return Err(format!("{cf} × {n}: walk {walked} ≠ trace {traced}"));
            }
        }
    }
    Ok(())
}

/// 3. The golden-ratio geodesic visits the convergent vertices
///    ∞, 0, 1, 1/2, 2/3, 3/5, 5/8 in order.
fn criterion_3() -> Result<(), String> {
    let golden = cfp("[0;(1)]").to_surd().map_err(|e| e.to_string())?;
    let vertices = convergent_vertices(&golden, 1, 7).map_err(|e| e.to_string())?;
    let expected: Vec<Rational> = ["1/0", "0", "1", "1/2", "2/3", "3/5", "5/8"]
        .iter()
        .map(|s| rat(s))
        .collect();
    if vertices == expected {
        Ok(())
    } else {
        Err(format!("got {vertices:?}"))
    }
}

/// 4. Word reduction concatenates around zero and negative exponents:
///    {1,1,1,0,−1,1,1,1} reduces to {0,1,2,1,1}.
fn criterion_4() -> Result<(), String> {
    let raw = CuttingWord::from_i64(&[0, 1, 1, 1, 0, -1, 1, 1, 1]);
    let reduced = raw.reduce();
    let expected = CuttingWord::from_i64(&[0, 1, 2, 1, 1]);
    if reduced == expected {
        Ok(())
    } else {
        Err(format!("got {reduced}"))
    }
}

/// 5. The level-7 Farey symbol is { ∞ 1 0 • 1/2 • 1 1 ∞ } and its
///    invariants satisfy 8 = 3·0 + 4·2 + 6·2 + 12·0 − 12.
fn criterion_5() -> Result<(), String> {
    let symbol = build_farey_symbol(7).map_err(|e| e.to_string())?;
    let expected_vertices: Vec<Rational> = ["1/0", "0", "1/2", "1", "1/0"]
        .iter()
        .map(|s| rat(s))
        .collect();
    if symbol.vertices() != expected_vertices.as_slice() {
        return Err(format!("vertices {:?}", symbol.vertices()));
    }
    match symbol.labels() {
        [IntervalLabel::Free(a), IntervalLabel::Odd, IntervalLabel::Odd, IntervalLabel::Free(b)]
            if a == b => {}
        other => return Err(format!("labels {other:?}")),
    }
    let inv = invariants(7).map_err(|e| e.to_string())?;
    if (inv.d, inv.t, inv.e2, inv.e3, inv.g) != (8, 2, 0, 2, 0) {
        return Err(format!("invariants {inv:?}"));
    }
    if inv.d != 3 * inv.e2 + 4 * inv.e3 + 6 * inv.t + 12 * inv.g - 12 {
        return Err("index identity violated".into());
    }
    Ok(())
}

/// 6. For every level 2..=60 the genus relation holds with non-negative
///    integer genus and every pairing matrix has the right projective
///    order and lies in Γ₀(n).
fn criterion_6() -> Result<(), String> {
    for n in 2..=60u64 {
        let inv = invariants(n).map_err(|e| format!("n={n}: {e}"))?;
        if inv.d != 3 * inv.e2 + 4 * inv.e3 + 6 * inv.t + 12 * inv.g - 12 {
            return Err(format!("n={n}: genus relation violated: {inv:?}"));
        }
        if inv.d != gamma0::index(n) || inv.t != gamma0::cusp_count(n) {
            return Err(format!("n={n}: closed formulas disagree: {inv:?}"));
        }
        let symbol = build_farey_symbol(n).map_err(|e| format!("n={n}: {e}"))?;
        let mats = pairing_matrices(&symbol).map_err(|e| format!("n={n}: {e}"))?;
        for (i, (label, m)) in symbol.labels().iter().zip(&mats).enumerate() {
            if !m.is_in_gamma0(n) {
                return Err(format!("n={n} interval {i}: matrix outside the group"));
            }
            let expected_order = match label {
                IntervalLabel::Even => Some(2),
                IntervalLabel::Odd => Some(3),
                IntervalLabel::Free(_) => None,
            };
            if m.projective_order() != expected_order {
                return Err(format!("n={n} interval {i}: wrong projective order"));
            }
        }
    }
    Ok(())
}

/// 7. For 100 corpus inputs and every n in 2..=10, each convergent
///    denominator divisible by n (with n < q_k) yields a verified height
///    bound and promoted convergent.
fn criterion_7() -> Result<(), String> {
    for cf in corpus::eventually_periodic(SEED_MAIN, 100) {
        for n in 2..=10u64 {
            verify_pro2(&cf, n, 500).map_err(|e| format!("{cf}, n={n}: {e}"))?;
        }
    }
    Ok(())
}

/// 8. 50 strictly periodic inputs have at least 3 divisible convergent
///    denominators and numerators within horizon 500 for every n in
///    2..=10, while [0;1,(1,1,2)] with n = 5 has no denominator hits even
///    at horizon 2000.
fn criterion_8() -> Result<(), String> {
    for cf in corpus::strictly_periodic(SEED_SP, 50) {
        for n in 2..=10u64 {
            for side in [ConvergentSide::Denominators, ConvergentSide::Numerators] {
                let hits = scan_divisible_convergents(&cf, n, 500, side)
                    .map_err(|e| format!("{cf}, n={n}: {e}"))?;
                if hits.len() < 3 {
                    return Err(format!("{cf}, n={n}, {side:?}: only {} hits", hits.len()));
                }
            }
        }
    }
    let fixture = cfp("[0;1,(1,1,2)]");
    let hits = scan_divisible_convergents(&fixture, 5, 2000, ConvergentSide::Denominators)
        .map_err(|e| e.to_string())?;
    if !hits.is_empty() {
        return Err(format!("fixture unexpectedly has hits at {hits:?}"));
    }
    Ok(())
}

/// 9. Multiplication and division by any n in 2..=12 keep essentially
///    strictly periodic inputs in the class.
fn criterion_9() -> Result<(), String> {
    for cf in corpus::essentially_strictly_periodic(SEED_ESP, 100) {
        for n in 2..=12u64 {
            let product = multiply_nbar(&cf, n).map_err(|e| format!("{cf} × {n}: {e}"))?;
            if !is_esp_plus(&product) {
                return Err(format!("{cf} × {n} = {product} left the class"));
            }
            let inverse = Rational::new(BigInt::from(1), BigInt::from(n)).expect("1/n");
            let quotient = cf
                .multiply_oracle(&inverse, ORACLE_BUDGET)
                .map_err(|e| format!("{cf} / {n}: {e}"))?;
            if !is_esp_plus(&quotient) {
                return Err(format!("{cf} / {n} = {quotient} left the class"));
            }
        }
    }
    Ok(())
}

/// 10. Every eventually-periodic-only corpus element decomposes within
///     k ≤ 12 (with the m ≤ 8 claim verified inside) and satisfies the
///     exponential height bound for i ≤ 6, for n in {2, 3}.
fn criterion_10() -> Result<(), String> {
    let mut failures = Vec::new();
    for cf in corpus::eventually_periodic_only(SEED_EVP_ONLY, 25) {
        for n in [2u64, 3] {
            match find_evp_decomposition(&cf, n, 12) {
                Ok(_) => {
                    if let Err(e) = verify_exponential_growth(&cf, n, 6) {
                        failures.push(format!("{cf}, n={n}: growth: {e}"));
                    }
                }
                Err(e) => failures.push(format!("{cf}, n={n}: {e}")),
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "{} of 50 cases failed; first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

/// 11. The closed-form common-neighbor test agrees with the brute-force
///     check over all reduced fractions with numerator and denominator at
///     most 40 (plus ∞) and every n in 2..=12.
fn criterion_11() -> Result<(), String> {
    let mut values = vec![Rational::infinity()];
    for q in 1..=40i64 {
        for p in 0..=40i64 {
            let r = Rational::new(BigInt::from(p), BigInt::from(q)).expect("q > 0");
            if r.num() == &BigInt::from(p) && r.den() == &BigInt::from(q) {
                values.push(r);
            }
        }
    }
    for a in &values {
        for b in &values {
            if a == b {
                continue;
            }
            for n in 2..=12u64 {
                let closed_form = neighbors_in_both(a, b, n);
                let brute = is_neighbor(a, b) && is_neighbor_scaled(a, b, n);
                if closed_form != brute {
                    return Err(format!("a={a}, b={b}, n={n}: {closed_form} vs {brute}"));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let checks: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("oracle equivalence of the geometric trace", criterion_1),
        ("domain-walk equivalence", criterion_2),
        ("golden-ratio convergent vertices", criterion_3),
        ("cutting-word reduction fixture", criterion_4),
        ("level-7 Farey symbol and invariants", criterion_5),
        ("genus relation and pairing orders, levels 2..=60", criterion_6),
        ("promoted-convergent height bounds", criterion_7),
        ("divisible convergent campaign", criterion_8),
        ("class closure under multiplication and division", criterion_9),
        ("decomposition and exponential height growth", criterion_10),
        ("common-neighbor closed form vs brute force", criterion_11),
    ];
    let mut all_pass = true;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:2}: PASS — {name}", i + 1),
            Err(msg) => {
                all_pass = false;
                println!("criterion {:2}: FAIL — {name}: {msg}", i + 1);
            }
        }
    }
    assert!(all_pass, "one or more acceptance criteria failed");
}
