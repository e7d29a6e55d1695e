use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use skeinfill::{fg_mult, fill, smith_normal_form, unknot, FillOptions, ModuleVector, PairClass, Filling, Slope};
use skeinfill::laurent::LaurentPoly;
use skeinfill_bench::{elements, matrices};

fn product_to_sum(c: &mut Criterion) {
    let xs = elements(16, 4, 20);
    c.bench_function("fg_mult 4x4 terms", |b| {
        b.iter(|| {
            for w in xs.windows(2) {
                black_box(fg_mult(&w[0], &w[1]));
            }
        })
    });
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [3, 5] {
        let ms = matrices(8, n, 4);
        g.bench_with_input(BenchmarkId::from_parameter(n), &ms, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(smith_normal_form(m, true));
                }
            })
        });
    }
    g.finish();
}

fn filling(c: &mut Criterion) {
    let u = unknot();
    let f = Filling::new(&u, Slope::new(7, 2).unwrap()).unwrap();
    let v = ModuleVector::single(0, PairClass::new(9, -13), LaurentPoly::one());
    c.bench_function("reduce_to_band 7/2", |b| b.iter(|| black_box(f.reduce_to_band(&v).unwrap())));

    let mut g = c.benchmark_group("fill");
    g.sample_size(10);
    for (p, q) in [(3, 1), (7, 2), (12, 5)] {
        let s = Slope::new(p, q).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, &s| {
            b.iter(|| black_box(fill(&u, s, FillOptions::default()).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, product_to_sum, snf, filling);
criterion_main!(benches);
