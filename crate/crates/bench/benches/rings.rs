use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use toric_chern::corpus;
use toric_chern::{build_ring, compare, masuda_check, FiberedToric};

fn rings(c: &mut Criterion) {
    let hexagon = corpus::hexagon();
    c.bench_function("build_ring hexagon", |b| b.iter(|| build_ring(black_box(&hexagon)).unwrap()));
    let cube = corpus::p1_cubed();
    c.bench_function("build_ring (P1)^3", |b| b.iter(|| build_ring(black_box(&cube)).unwrap()));
}

fn comparisons(c: &mut Criterion) {
    for inst in corpus::fibered_instances().into_iter().filter(|i| i.name.starts_with("P2 over")) {
        c.bench_function(&format!("compare {}", inst.name), |b| {
            b.iter(|| compare(&FiberedToric::new(&inst.base, &inst.fiber, &inst.phi).unwrap()).unwrap())
        });
    }
}

fn masuda(c: &mut Criterion) {
    let qs = corpus::quasitoric_square();
    c.bench_function("masuda quasitoric square", |b| b.iter(|| masuda_check(black_box(&qs), 4).unwrap()));
}

criterion_group!(benches, rings, comparisons, masuda);
criterion_main!(benches);
