use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use symorbit::localize::verify_closed_orbit_with;
use symorbit::schub::expand_schubert_with;
use symorbit::upsilon::{closed_orbit_upsilon, compute_values_with};
use symorbit::{Pair, Strategy, Theory};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn localization(c: &mut Criterion) {
    let pair = Pair::symplectic(6).unwrap();
    let mut group = c.benchmark_group("closed_orbit_localization_sp6");
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &strategy, |b, &s| {
            b.iter(|| verify_closed_orbit_with(pair, s).unwrap())
        });
    }
    group.finish();
}

fn k_recursion(c: &mut Criterion) {
    let pair = Pair::symplectic(8).unwrap();
    let mut group = c.benchmark_group("k_values_sp8");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &strategy, |b, &s| {
            b.iter(|| compute_values_with(pair, Theory::KTheory, s).unwrap())
        });
    }
    group.finish();
}

fn schubert_expansion(c: &mut Criterion) {
    let pair = Pair::symplectic(8).unwrap();
    let f = closed_orbit_upsilon(pair);
    let mut group = c.benchmark_group("schubert_expansion_sp8_closed");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &strategy, |b, &s| {
            b.iter(|| expand_schubert_with(&f, 8, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, localization, k_recursion, schubert_expansion);
criterion_main!(benches);
