use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mahler_bench::fixtures;
use mahler_core::reduce_to_parallelogram;

fn bench_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_to_parallelogram");
    for pairs in [3, 8, 20] {
        let polys = fixtures(pairs, 8);
        group.bench_with_input(
            BenchmarkId::from_parameter(2 * pairs),
            &polys,
            |b, polys| {
                b.iter(|| {
                    for p in polys {
                        black_box(reduce_to_parallelogram(black_box(p)).unwrap());
                    }
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_reduction);
criterion_main!(benches);
