use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracwave::fracops::{caputo_l1, gamma_fn, rl_integral_num};
use fracwave::mittag::mittag_leffler;
use fracwave::subspace::check_invariance;
use fracwave::{Basis, KOperator, Order, Scalar};
use fracwave_bench::smooth_samples;

fn gamma(c: &mut Criterion) {
    c.bench_function("gamma/positive", |b| b.iter(|| gamma_fn(black_box(7.3))));
    c.bench_function("gamma/reflection", |b| b.iter(|| gamma_fn(black_box(-2.7))));
}

fn mittag(c: &mut Criterion) {
    let mut g = c.benchmark_group("mittag_leffler");
    // one argument per evaluation regime
    for z in [-2.0, -30.0, -400.0] {
        g.bench_with_input(BenchmarkId::new("a=0.75", z), &z, |b, &z| {
            b.iter(|| mittag_leffler(0.75, 1.0, black_box(z)))
        });
        g.bench_with_input(BenchmarkId::new("a=1.5", z), &z, |b, &z| {
            b.iter(|| mittag_leffler(1.5, 1.75, black_box(z)))
        });
    }
    g.finish();
}

fn schemes(c: &mut Criterion) {
    let alpha = Order::new(0.6).unwrap();
    let mut g = c.benchmark_group("schemes");
    g.sample_size(20);
    for n in [1024, 4096] {
        let f = smooth_samples(n);
        g.bench_with_input(BenchmarkId::new("caputo_l1", n), &f, |b, f| {
            b.iter(|| caputo_l1(f, alpha))
        });
        g.bench_with_input(BenchmarkId::new("rl_integral", n), &f, |b, f| {
            b.iter(|| rl_integral_num(f, alpha))
        });
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let trig = Basis::trig(Scalar::one()).unwrap();
    let quintic = KOperator::quintic(Scalar::one(), Scalar::ratio(9, 2), Scalar::int(2)).unwrap();
    let cubic = Basis::monomial(3).unwrap();
    c.bench_function("closure/quintic_trig", |b| b.iter(|| check_invariance(&quintic, &trig)));
    c.bench_function("closure/third_monomial", |b| {
        b.iter(|| check_invariance(&KOperator::third_order(), &cubic))
    });
}

criterion_group!(benches, gamma, mittag, schemes, closure);
criterion_main!(benches);
