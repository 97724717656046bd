use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyadic_bench::{dense_chain, random_factors};
use polyadic_core::blockshift::{nary_product, BlockShiftMatrix};
use polyadic_core::verify::trial_rng;
use std::hint::black_box;

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("nary_product");
    group.sample_size(20);
    for &(n, p) in &[(2, 64), (4, 32), (4, 64), (5, 32)] {
        let mut rng = trial_rng(0, 0);
        let factors = random_factors(n, p, &mut rng).unwrap();
        let dense: Vec<_> = factors.iter().map(BlockShiftMatrix::to_dense).collect();
        let label = format!("n{n}_p{p}");
        group.bench_with_input(BenchmarkId::new("blockwise", &label), &factors, |b, f| {
            b.iter(|| nary_product(black_box(f)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dense", &label), &dense, |b, d| {
            b.iter(|| dense_chain(black_box(d)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, products);
criterion_main!(benches);
