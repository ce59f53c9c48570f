use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ree_unital::design::{isomorphism_search, verify_2design};
use ree_unital::rt::{intersection_search, join_rt};
use ree_unital::{ReePoint, RootGroup, RtUnital, UnitalS};

fn field_and_group(c: &mut Criterion) {
    let g = RootGroup::for_order(19683).unwrap();
    let f = g.field();
    let (x, y) = (f.from_rank(12345), f.from_rank(6789));
    c.bench_function("gf3^9 mul", |b| b.iter(|| f.mul(black_box(x), black_box(y))));
    c.bench_function("gf3^9 theta", |b| b.iter(|| f.theta(black_box(x))));

    let (p, r) = (g.xi_at(1_000_000), g.xi_at(2_000_000));
    c.bench_function("xi mul q=19683", |b| b.iter(|| g.mul(black_box(p), black_box(r))));
    c.bench_function("omega q=19683", |b| b.iter(|| g.omega_xi(black_box(p)).unwrap()));
}

fn joins(c: &mut Criterion) {
    let g = RootGroup::for_order(27).unwrap();
    let (p, r) = (ReePoint::Finite(g.xi_at(100)), ReePoint::Finite(g.xi_at(9000)));
    c.bench_function("join_rt q=27", |b| b.iter(|| join_rt(&g, black_box(p), black_box(r)).unwrap()));

    let s = UnitalS::build().unwrap();
    c.bench_function("join_points S", |b| b.iter(|| s.join_points(black_box(3), black_box(17)).unwrap()));
}

fn builds(c: &mut Criterion) {
    c.bench_function("build S", |b| b.iter(|| UnitalS::build().unwrap()));
    let g3 = RootGroup::for_order(3).unwrap();
    c.bench_function("build RT(3)", |b| b.iter(|| RtUnital::build(&g3).unwrap()));

    let s = UnitalS::build().unwrap();
    let rt = RtUnital::build(&g3).unwrap();
    c.bench_function("verify S", |b| b.iter(|| verify_2design(s.structure()).unwrap()));
    c.bench_function("iso S -> RT(3)", |b| b.iter(|| isomorphism_search(s.structure(), rt.structure()).unwrap()));
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("intersection_search");
    group.sample_size(10);
    for q in [27, 243, 2187] {
        let g = RootGroup::for_order(q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &g, |b, g| b.iter(|| intersection_search(g)));
    }
    group.finish();
}

criterion_group!(benches, field_and_group, joins, builds, searches);
criterion_main!(benches);
