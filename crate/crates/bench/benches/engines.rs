//! Benchmarks comparing the three multiplication engines and the
//! Farey-symbol construction.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fareymul::{build_farey_symbol, multiply_nbar, tile_walk_multiply, ContinuedFraction, Rational};

const ORACLE_QUOTIENTS: usize = 10_000;

fn inputs() -> Vec<(&'static str, ContinuedFraction)> {
    vec![
        ("golden", "[0;(1)]".parse().unwrap()),
        ("sqrt2", "[1;(2)]".parse().unwrap()),
        ("mixed", "[3;1,4,(2,1,1,6)]".parse().unwrap()),
    ]
}

fn bench_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for (name, cf) in inputs() {
        for n in [2u64, 5, 11] {
            let id = format!("{name}/n={n}");
            group.bench_with_input(BenchmarkId::new("oracle", &id), &cf, |b, cf| {
                let factor = Rational::from_integer(num_bigint::BigInt::from(n));
                b.iter(|| cf.multiply_oracle(&factor, ORACLE_QUOTIENTS).unwrap());
            });
            group.bench_with_input(BenchmarkId::new("trace", &id), &cf, |b, cf| {
                b.iter(|| multiply_nbar(cf, n).unwrap());
            });
            group.bench_with_input(BenchmarkId::new("tile-walk", &id), &cf, |b, cf| {
                b.iter(|| tile_walk_multiply(cf, n).unwrap());
            });
        }
    }
    group.finish();
}

fn bench_symbols(c: &mut Criterion) {
    let mut group = c.benchmark_group("farey-symbol");
    for n in [7u64, 30, 101, 210] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_farey_symbol(n).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_engines, bench_symbols);
criterion_main!(benches);
