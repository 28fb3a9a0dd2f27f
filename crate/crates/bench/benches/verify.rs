use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use mplus_bench::{alpha, model};
use mplus_core::census::{default_region_q, monte_carlo, region_map};
use mplus_core::hochschild::cyclic_cycle_check;
use mplus_core::pairing::{m_plus_chain, verify_cyclic_symmetry};
use mplus_core::TorusPoint;

fn algebra(c: &mut Criterion) {
    c.bench_function("clifford_build", |b| b.iter(|| black_box(model())));
    let m = model();
    let s = m.reduced();
    let a = alpha(&m);
    c.bench_function("verify_ainfty_len4", |b| {
        b.iter(|| black_box(s.verify_ainfty(4)))
    });
    c.bench_function("verify_cyclic_len4", |b| {
        b.iter(|| black_box(verify_cyclic_symmetry(&s, &m.pairing, 4)))
    });
    c.bench_function("m_plus_alpha", |b| {
        b.iter(|| black_box(m_plus_chain(&s, &m.pairing, &a).unwrap()))
    });
    c.bench_function("alpha_cycle_check", |b| {
        b.iter(|| black_box(cyclic_cycle_check(&s, &a)))
    });
}

fn geometry(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("monte_carlo_1000", |b| {
        b.iter(|| black_box(monte_carlo(1000, 7).unwrap()))
    });
    g.bench_function("region_map_64", |b| {
        b.iter(|| black_box(region_map(&TorusPoint::origin(), &default_region_q(), 64).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, algebra, geometry);
criterion_main!(benches);
