use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use implodekit::basicaffine::embed_su_n;
use implodekit::implosion::universal_strata;
use implodekit::suites::{run_suite, Suite};
use implodekit_bench::{chamber_samples, simply_connected};

fn embedding(c: &mut Criterion) {
    let samples = chamber_samples(3, 64, 7);
    c.bench_function("embed_su_n SU(3) x64", |b| {
        b.iter(|| {
            for (k, l) in &samples {
                black_box(embed_su_n(k, l).unwrap());
            }
        })
    });
}

fn suites(c: &mut Criterion) {
    let a2 = simply_connected("A", 2);
    let mut group = c.benchmark_group("verify");
    group.sample_size(20);
    for suite in [Suite::Geometry, Suite::Embedding, Suite::Quadric] {
        group.bench_function(suite.name(), |b| b.iter(|| run_suite(suite, &a2, black_box(1), 50, None).unwrap()));
    }
    group.finish();
}

fn strata(c: &mut Criterion) {
    let e8 = simply_connected("E", 8);
    c.bench_function("universal_strata E8", |b| b.iter(|| universal_strata(black_box(&e8)).unwrap()));
}

criterion_group!(benches, embedding, suites, strata);
criterion_main!(benches);
