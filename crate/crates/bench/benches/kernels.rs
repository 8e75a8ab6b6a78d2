use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eostrata_core::loopgrp::{random_coset_elem, u_adic_snf};
use eostrata_core::verify::standard_configs;
use eostrata_core::zip::{classify_orbits, transporter};
use eostrata_core::{Cochar, Gf, GroupSpec, Ring, SeriesRing};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn orbit_classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_orbits");
    group.sample_size(10);
    for (spec, chi) in standard_configs() {
        for p in [2, 3] {
            let f = Gf::prime(p).unwrap();
            group.bench_with_input(BenchmarkId::new(spec.to_string(), p), &f, |b, f| {
                b.iter(|| classify_orbits(&spec, &chi, f).unwrap())
            });
        }
    }
    group.finish();
}

fn orbit_transporter(c: &mut Criterion) {
    let mut group = c.benchmark_group("transporter");
    group.sample_size(10);
    for (spec, chi) in standard_configs() {
        let f = Gf::prime(2).unwrap();
        let t = classify_orbits(&spec, &chi, &f).unwrap();
        let (a, z) = (&t.orbits[0].rep, &t.orbits[t.orbits.len() - 1].rep);
        for r in [1, 2] {
            group.bench_function(BenchmarkId::new(spec.to_string(), r), |b| {
                b.iter(|| transporter(&spec, &chi, &f, black_box(a), black_box(z), r).unwrap())
            });
        }
    }
    group.finish();
}

fn smith_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("u_adic_snf");
    for (n, w) in [(2, vec![1, 0]), (3, vec![1, 1, 0]), (4, vec![1, 1, 0, 0])] {
        let chi = Cochar::new(w).unwrap();
        let s = SeriesRing::new(Gf::prime(3).unwrap(), 14).unwrap();
        let t = random_coset_elem(&GroupSpec::GL(n), &chi, &s, &mut ChaCha8Rng::seed_from_u64(1))
            .unwrap()
            .materialize(&s)
            .unwrap();
        group.bench_function(BenchmarkId::from_parameter(n), |b| b.iter(|| u_adic_snf(&s, black_box(&t)).unwrap()));
    }
    group.finish();
}

fn series_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    for (p, r, n) in [(3, 1, 16), (3, 2, 16), (2, 3, 64), (5, 1, 128)] {
        let s = SeriesRing::new(Gf::new(p, r).unwrap(), n).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(2);
        let (a, b2) = (s.random(&mut g), s.random(&mut g));
        group.bench_function(BenchmarkId::new(format!("F{p}^{r}"), n), |b| b.iter(|| s.mul(black_box(&a), black_box(&b2))));
    }
    group.finish();
}

criterion_group!(benches, orbit_classification, orbit_transporter, smith_form, series_mul);
criterion_main!(benches);
