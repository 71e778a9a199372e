//! Planner benchmarks: exhaustive search cost at realistic and worst-case
//! grid/pool sizes.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use popcmt_core::resonance::{plan_alignment, PlannerConfig};
use popcmt_core::seeds::counter_gaussian;
use popcmt_core::types::{ResonanceField, StyleComponent, StyleDimension};
use popcmt_core::vector;

fn random_unit(seed: u64, dim: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim).map(|c| counter_gaussian(seed, c as u64)).collect();
    vector::normalize_or_zero(&raw)
}

fn random_field(seed: u64, dim: usize) -> ResonanceField {
    let components = StyleDimension::ALL.map(|d| {
        StyleComponent::new(d, 0.6, random_unit(seed ^ (d.index() as u64 + 1), dim)).unwrap()
    });
    ResonanceField::from_components(components, 4).unwrap()
}

fn bench_planner(c: &mut Criterion) {
    let dim = 64;
    let field = random_field(7, dim);
    let mut group = c.benchmark_group("plan_alignment");
    for pool_size in [1usize, 3, 5] {
        let pools: [Vec<Vec<f64>>; 4] = std::array::from_fn(|d| {
            (0..pool_size)
                .map(|p| random_unit(1000 + (d * 10 + p) as u64, dim))
                .collect()
        });
        let cfg = PlannerConfig::default();
        group.bench_with_input(
            BenchmarkId::from_parameter(pool_size),
            &pool_size,
            |b, _| b.iter(|| plan_alignment(black_box(&field), black_box(&pools), &cfg).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_planner);
criterion_main!(benches);
