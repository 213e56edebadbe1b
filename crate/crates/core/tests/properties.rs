//! Randomized invariant checks over the library's exact arithmetic.

use num_bigint::BigInt;
use proptest::prelude::*;

use fareymul::farey::{farey_sub, is_neighbor, is_neighbor_scaled, mediant, neighbors_in_both};
use fareymul::trace::{convergent_vertices, fan_vertices_are_neighbours};
use fareymul::{
    build_farey_symbol, gamma0, invariants, multiply_nbar, ContinuedFraction, CuttingWord,
    Rational,
};

fn cf_strategy() -> impl Strategy<Value = ContinuedFraction> {
    (
        0u32..=9,
        prop::collection::vec(1u32..=9, 0..=4),
        prop::collection::vec(1u32..=9, 1..=6),
    )
        .prop_map(|(a0, pre, period)| {
            ContinuedFraction::new(
                BigInt::from(a0),
                pre.into_iter().map(BigInt::from).collect(),
                period.into_iter().map(BigInt::from).collect(),
            )
            .expect("positive quotients are valid")
        })
}

/// A pair of Farey neighbors generated by a random walk down the
/// Stern–Brocot tree from the base edge (0, ∞).
fn neighbor_pair_strategy() -> impl Strategy<Value = (Rational, Rational)> {
    prop::collection::vec(any::<bool>(), 0..=12).prop_map(|steps| {
        let mut a = Rational::zero();
        let mut b = Rational::infinity();
        for go_left in steps {
            let m = mediant(&a, &b).expect("walk stays on neighbors");
            if go_left {
                b = m;
            } else {
                a = m;
            }
        }
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_round_trips_through_display(cf in cf_strategy()) {
        let reparsed: ContinuedFraction = cf.to_string().parse().expect("display parses");
        prop_assert_eq!(reparsed, cf);
    }

    #[test]
    fn surd_round_trips_to_the_same_expansion(cf in cf_strategy()) {
        let surd = cf.to_surd().expect("periodic input has a surd value");
        let back = fareymul::trace::surd_cf(&surd, 10_000).expect("expansion recovers");
        prop_assert_eq!(back, cf);
    }

    #[test]
    fn oracle_multiplication_is_associative(cf in cf_strategy(), a in 2u64..=5, b in 2u64..=5) {
        let step = cf
            .multiply_oracle(&Rational::from_integer(a), 10_000)
            .and_then(|x| x.multiply_oracle(&Rational::from_integer(b), 10_000))
            .expect("stepwise product");
        let direct = cf
            .multiply_oracle(&Rational::from_integer(a * b), 10_000)
            .expect("direct product");
        prop_assert_eq!(step, direct);
    }

    #[test]
    fn multiplying_by_one_is_the_identity(cf in cf_strategy()) {
        let product = cf.multiply_oracle(&Rational::from_integer(1u32), 10_000).expect("×1");
        prop_assert_eq!(product, cf);
    }

    #[test]
    fn geometric_trace_matches_oracle(cf in cf_strategy(), n in 2u64..=7) {
        let geometric = multiply_nbar(&cf, n).expect("trace");
        let oracle = cf
            .multiply_oracle(&Rational::from_integer(n), 10_000)
            .expect("oracle");
        prop_assert_eq!(geometric, oracle);
    }

    #[test]
    fn traced_fan_vertices_are_neighbours(cf in cf_strategy(), d in 1u64..=4) {
        let surd = cf.to_surd().expect("surd");
        let vertices = convergent_vertices(&surd, d, 8).expect("vertices");
        prop_assert!(fan_vertices_are_neighbours(&vertices, d));
    }

    #[test]
    fn word_reduction_is_idempotent(exps in prop::collection::vec(-3i64..=5, 1..=10)) {
        let reduced = CuttingWord::from_i64(&exps).reduce();
        prop_assert!(reduced.is_reduced());
        prop_assert_eq!(reduced.reduce(), reduced);
    }

    #[test]
    fn mediant_and_difference_are_common_neighbors((a, b) in neighbor_pair_strategy()) {
        let m = mediant(&a, &b).expect("neighbors");
        prop_assert!(is_neighbor(&a, &m) && is_neighbor(&b, &m));
        let s = farey_sub(&b, &a).expect("neighbors");
        prop_assert!(is_neighbor(&a, &s) && is_neighbor(&b, &s));
    }

    #[test]
    fn common_neighbor_closed_form_agrees_with_brute_force(
        (a, b) in neighbor_pair_strategy(),
        n in 2u64..=12,
    ) {
        prop_assume!(a != b);
        let closed_form = neighbors_in_both(&a, &b, n);
        let brute = is_neighbor(&a, &b) && is_neighbor_scaled(&a, &b, n);
        prop_assert_eq!(closed_form, brute);
    }

    #[test]
    fn symbol_invariants_hold_for_random_levels(n in 2u64..=90) {
        let symbol = build_farey_symbol(n).expect("symbol builds");
        prop_assert_eq!(symbol.index_from_symbol(), gamma0::index(n));
        let inv = invariants(n).expect("invariants");
        prop_assert_eq!(inv.d, 3 * inv.e2 + 4 * inv.e3 + 6 * inv.t + 12 * inv.g - 12);
        prop_assert_eq!(inv.t, gamma0::cusp_count(n));
    }
}
