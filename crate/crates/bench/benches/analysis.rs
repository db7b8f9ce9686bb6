use criterion::{criterion_group, criterion_main, Criterion};
use igm_core::examples::{and_ig, final_ig, torsionex_ig, veronese_ig};
use igm_core::{is_maximal_order_s, is_torsion_free, non_maximal_witness, primes_of_s};

fn torsion(c: &mut Criterion) {
    let and = and_ig();
    let dihedral = torsionex_ig();
    c.bench_function("torsion/and", |b| b.iter(|| is_torsion_free(&and)));
    c.bench_function("torsion/dihedral", |b| b.iter(|| is_torsion_free(&dihedral)));
}

fn maximal_order(c: &mut Criterion) {
    let and = and_ig();
    let veronese = veronese_ig();
    c.bench_function("primes/and/height-2", |b| b.iter(|| primes_of_s(&and, 2).unwrap()));
    c.bench_function("maximal-order/and", |b| b.iter(|| is_maximal_order_s(&and).unwrap()));
    c.bench_function("maximal-order/veronese", |b| b.iter(|| is_maximal_order_s(&veronese).unwrap()));
}

fn witness(c: &mut Criterion) {
    let s = final_ig();
    let mut g = c.benchmark_group("witness");
    g.sample_size(10);
    g.bench_function("final/bound-2", |b| b.iter(|| non_maximal_witness(&s, 2).unwrap()));
    g.finish();
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    g.bench_function("veronese", |b| b.iter(veronese_ig));
    g.finish();
}

criterion_group!(benches, torsion, maximal_order, witness, build);
criterion_main!(benches);
