use criterion::{black_box, criterion_group, criterion_main, Criterion};

use laxtop::descent::{laxcomma_effective_descent, top_effective_descent_check};
use laxtop::enumerate::{enumerate_posets, Mode};
use laxtop::fixtures::m3;
use laxtop::harness::{run_suite, HarnessConfig};
use laxtop::laxcomma::{exponential_object, lax_product};
use laxtop::vietoris::vietoris_monad;
use laxtop::FiniteSpace;
use laxtop_bench::{c3_cover, chain_objects, m3_lax_cover};

fn enumeration(c: &mut Criterion) {
    c.bench_function("unlabeled posets on 5 points", |b| {
        b.iter(|| {
            enumerate_posets(black_box(5), Mode::Unlabeled)
                .unwrap()
                .len()
        })
    });
}

fn constructions(c: &mut Criterion) {
    let base = m3();
    let objs = chain_objects(&base, 2);
    c.bench_function("lax product of two 2-chains over M3", |b| {
        b.iter(|| lax_product(&base, black_box(&objs[..2])).unwrap())
    });
    let a = &objs[objs.len() / 2];
    let z = &objs[objs.len() - 1];
    c.bench_function("exponential of 2-chains over M3", |b| {
        b.iter(|| exponential_object(black_box(a), black_box(z)).unwrap())
    });
    let s = FiniteSpace::chain(3);
    c.bench_function("lower Vietoris of the 3-chain", |b| {
        b.iter(|| vietoris_monad(black_box(&s)).unwrap())
    });
}

fn descent(c: &mut Criterion) {
    let f = c3_cover();
    c.bench_function("2-chain lifting on the C3 chain cover", |b| {
        b.iter(|| top_effective_descent_check(black_box(&f)))
    });
    let g = m3_lax_cover();
    c.bench_function("lax effective descent over M3", |b| {
        b.iter(|| laxcomma_effective_descent(black_box(&g)).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let config = HarnessConfig {
        max_points: 3,
        ..HarnessConfig::default()
    };
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for name in ["sierpinski-descent", "coequalizer-oracle"] {
        group.bench_function(name, |b| b.iter(|| run_suite(name, &config).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, constructions, descent, suites);
criterion_main!(benches);
