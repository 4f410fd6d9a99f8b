use std::hint::black_box;

use carlitz_core::algebra::parse::parse_poly;
use carlitz_core::carlitz::{exp_inf, log_inf};
use carlitz_core::modstruct::fitting_ideal;
use carlitz_core::rings::RingDescriptor;
use carlitz_core::zeta::{zeta_inf, zeta_padic, zeta_poly};
use carlitz_core::LaurentSeries;
use criterion::{criterion_group, criterion_main, Criterion};

fn series(c: &mut Criterion) {
    let a3 = RingDescriptor::a(3).unwrap();
    let one = LaurentSeries::one(a3.base(), 40);
    c.bench_function("log_inf q=3 prec 40", |b| b.iter(|| log_inf(black_box(&one), 40).unwrap()));
    c.bench_function("exp_inf q=3 prec 40", |b| b.iter(|| exp_inf(black_box(&one), 40).unwrap()));
}

fn zeta(c: &mut Criterion) {
    let a2 = RingDescriptor::a(2).unwrap();
    let a3 = RingDescriptor::a(3).unwrap();
    let t = parse_poly(a3.base(), "t").unwrap();
    c.bench_function("zeta_inf q=2 n=1 prec 16", |b| b.iter(|| zeta_inf(&a2, 1, 16).unwrap()));
    c.bench_function("zeta_poly q=3 n=-6", |b| b.iter(|| zeta_poly(&a3, -6).unwrap()));
    let mut g = c.benchmark_group("padic");
    g.sample_size(10);
    g.bench_function("zeta_padic q=3 P=t s=1", |b| b.iter(|| zeta_padic(&a3, 1, &t, 1, 0).unwrap()));
    g.finish();
}

fn fitting(c: &mut Criterion) {
    let f9 = RingDescriptor::new(3, 2).unwrap();
    let p = f9.ideal(&parse_poly(f9.field_l(), "t^2+t+u").unwrap()).unwrap();
    c.bench_function("fitting deformed F_9[t]", |b| b.iter(|| fitting_ideal(black_box(&p), true).unwrap()));
}

criterion_group!(benches, series, zeta, fitting);
criterion_main!(benches);
