use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use linkage_bench::{named_ring, polynomial_ring, quadrics, residue_field, small_instances};
use linkage_core::algebra::{buchberger, parse_poly, Field, TermOrder};
use linkage_core::harness::{run_suite, TheoremId};
use linkage_core::{Config, Engine, Module};

fn koszul(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul_resolution");
    for n in 2..=4 {
        let ring = polynomial_ring(n);
        let k = residue_field(&ring);
        g.bench_with_input(BenchmarkId::from_parameter(n), &k, |b, k| {
            // a fresh engine per run, otherwise the memo answers
            b.iter(|| {
                Engine::new(Config::default())
                    .resolution(black_box(k), n)
                    .unwrap()
            })
        });
    }
    g.finish();
}

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger_quadrics");
    for n in 3..=4 {
        let ring = polynomial_ring(n);
        let gens = quadrics(&ring);
        g.bench_with_input(BenchmarkId::from_parameter(n), &gens, |b, gens| {
            b.iter(|| buchberger(black_box(gens), &[0], &TermOrder::top(), 12).unwrap())
        });
    }
    g.finish();
}

fn linkage_ops(c: &mut Criterion) {
    let ring = named_ring("axes3");
    let m = Module::cyclic(&ring, &[ring.poly("x").unwrap()]).unwrap();
    c.bench_function("lambda_axes3", |b| {
        b.iter(|| {
            Engine::new(Config::default())
                .lambda(black_box(&m))
                .unwrap()
        })
    });
    c.bench_function("horizontal_linkage_axes3", |b| {
        b.iter(|| {
            Engine::new(Config::default())
                .is_horizontally_linked(black_box(&m))
                .unwrap()
        })
    });
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite_small");
    g.sample_size(10);
    for ring in ["node", "axes3"] {
        let e = Engine::new(Config::default());
        let inst = small_instances(&e, ring);
        g.bench_with_input(BenchmarkId::from_parameter(ring), &inst, |b, inst| {
            b.iter(|| {
                run_suite(
                    &Engine::new(Config::default()),
                    inst,
                    &[TheoremId::ThmMs, TheoremId::PropT1],
                )
            })
        });
    }
    g.finish();
}

fn parsing(c: &mut Criterion) {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let text = "x^3*y - 3/2 z^2*x^2 + (x+y)^4 - 7*y*z^3";
    c.bench_function("parse_poly", |b| {
        b.iter(|| parse_poly(Field::Rationals, &vars, black_box(text)).unwrap())
    });
}

criterion_group!(benches, koszul, groebner, linkage_ops, suite, parsing);
criterion_main!(benches);
