use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mahler_bench::fixtures;
use mahler_core::approximation::{inscribe_polygon, SampledBody};
use mahler_core::{polar, volume_product};

fn bench_volume_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("volume_product");
    for pairs in [3, 10, 20] {
        let polys = fixtures(pairs, 16);
        group.bench_with_input(BenchmarkId::new("float", 2 * pairs), &polys, |b, polys| {
            b.iter(|| {
                for p in polys {
                    black_box(volume_product(black_box(p)).unwrap());
                }
            })
        });
    }
    let ellipse = SampledBody::Ellipse { a: 1.5, b: 0.7 };
    for m in [256, 1024] {
        let p = inscribe_polygon(&ellipse, m).unwrap();
        group.bench_with_input(BenchmarkId::new("inscribed", m), &p, |b, p| {
            b.iter(|| black_box(volume_product(black_box(p)).unwrap()))
        });
    }
    for pairs in [3, 10, 20] {
        let polys: Vec<_> = fixtures(pairs, 4)
            .iter()
            .map(|p| p.to_exact().unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::new("exact", 2 * pairs), &polys, |b, polys| {
            b.iter(|| {
                for p in polys {
                    black_box(polar(black_box(p)).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_volume_product);
criterion_main!(benches);
