use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use purespin::dirac::{self, Perturbation};
use purespin::random::{self, DatumShape};
use purespin::{spinor, Rational};

fn dictionary(c: &mut Criterion) {
    let mut g = c.benchmark_group("dictionary");
    for n in [3, 5, 7] {
        let mut rng = random::rng(n as u64);
        let l = random::lagrangian::<Rational>(&mut rng, n).unwrap();
        g.bench_with_input(BenchmarkId::new("spinor_of", n), &l, |b, l| b.iter(|| spinor::spinor_of(black_box(l)).unwrap()));
        let phi = spinor::spinor_of(&l).unwrap().form;
        g.bench_with_input(BenchmarkId::new("annihilator", n), &phi, |b, phi| b.iter(|| spinor::annihilator(black_box(phi)).unwrap()));
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduction");
    for n in [3, 5, 7] {
        let mut rng = random::rng(100 + n as u64);
        let d = random::datum::<Rational>(&mut rng, n, DatumShape::default()).unwrap();
        let l = random::lagrangian::<Rational>(&mut rng, n).unwrap();
        let phi = spinor::spinor_of(&l).unwrap();
        g.bench_function(BenchmarkId::new("reduce", n), |b| b.iter(|| dirac::reduce(black_box(&l), &d).unwrap()));
        g.bench_function(BenchmarkId::new("reduce_spinor", n), |b| {
            b.iter(|| dirac::reduce_spinor(black_box(&phi), &d, &Perturbation::Auto).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, dictionary, reduction);
criterion_main!(benches);
