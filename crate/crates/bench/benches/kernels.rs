use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opball::random::{self, rng};
use opball::{
    approx_operator, ball_dist, ensemble_draw, ensemble_experiment, herm_eig, metric_d, mobius,
};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("herm_eig");
    for n in [4, 8, 16, 32] {
        let p = random::hermitian(&mut rng(n as u64), n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| herm_eig(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn ball(c: &mut Criterion) {
    let mut r = rng(1);
    let a = random::ball_point(&mut r, 8, 4, 0.05);
    let z = random::ball_point(&mut r, 8, 4, 0.05);
    c.bench_function("mobius 8x4", |b| {
        b.iter(|| mobius(black_box(&a), black_box(&z)).unwrap())
    });
    c.bench_function("ball_dist 8x4", |b| {
        b.iter(|| ball_dist(black_box(&a), black_box(&z)).unwrap())
    });
}

fn metric(c: &mut Criterion) {
    let mut r = rng(2);
    let t = random::operator(&mut r, 12, 4, 1e-2, 1e3);
    let s = random::operator(&mut r, 12, 4, 1e-2, 1e3);
    c.bench_function("metric_d 4x12", |b| {
        b.iter(|| metric_d(black_box(&t), black_box(&s)).unwrap())
    });
}

fn density(c: &mut Criterion) {
    let (t, pair) = ensemble_draw(8, 2, 0, 0).unwrap();
    let mut group = c.benchmark_group("approx_operator p=8 q=2");
    for n in [1, 4, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| approx_operator(black_box(&t), black_box(&pair), n).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("ensemble");
    group.sample_size(10);
    group.bench_function("8x2, 50 trials", |b| {
        b.iter(|| ensemble_experiment(8, 2, 50, 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigensolver, ball, metric, density);
criterion_main!(benches);
