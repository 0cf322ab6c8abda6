use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gf2q_core::{build_q, decide_p1_search, decide_p2_search, factor, poly_order, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut exps: Vec<usize> = (0..degree).filter(|_| rng.random::<bool>()).collect();
    exps.push(degree);
    Poly::from_exponents(exps)
}

fn bench_build_q(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("build_q");
    for degree in [64usize, 256, 1024] {
        let f = random_poly(&mut rng, degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &f, |b, f| {
            b.iter(|| build_q(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn bench_factor(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("factor");
    for degree in [32usize, 128, 512] {
        let f = random_poly(&mut rng, degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &f, |b, f| {
            b.iter(|| factor(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn bench_order(c: &mut Criterion) {
    // product of x^3+x+1 and x^5+x^2+1: order 15
    let f = Poly::from_u64(0b1011).mul(&Poly::from_u64(0b100101));
    c.bench_function("poly_order/deg8", |b| {
        b.iter(|| poly_order(black_box(&f)).unwrap())
    });
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.bench_function("p1/2..=2000", |b| {
        b.iter(|| {
            (2..=2000u64)
                .filter(|&m| decide_p1_search(m).unwrap().holds)
                .count()
        })
    });
    group.bench_function("p2/2..=500", |b| {
        b.iter(|| {
            (2..=500u64)
                .filter(|&m| decide_p2_search(m).unwrap().holds)
                .count()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_build_q,
    bench_factor,
    bench_order,
    bench_search
);
criterion_main!(benches);
