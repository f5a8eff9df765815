use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hocat::fincat::{enumerate_functors, fin_ordinal, product, DEFAULT_GUARD};
use hocat::nerve::{check_coskeletal2, nerve, nerve2};
use hocat::sset::enumerate_maps;
use hocat::Exec;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn functors(c: &mut Criterion) {
    let square = product(&fin_ordinal(1), &fin_ordinal(1)).cat;
    let target = fin_ordinal(4);
    let mut g = c.benchmark_group("enumerate_functors");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "square->fin5"), &exec, |b, &exec| {
            b.iter(|| enumerate_functors(black_box(&square), black_box(&target), DEFAULT_GUARD, exec).unwrap())
        });
    }
    g.finish();
}

fn maps(c: &mut Criterion) {
    let x = nerve2(&fin_ordinal(2)).unwrap().sset;
    let y = nerve2(&fin_ordinal(3)).unwrap().sset;
    let mut g = c.benchmark_group("enumerate_maps");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "N(fin3)->N(fin4)"), &exec, |b, &exec| {
            b.iter(|| enumerate_maps(black_box(&x), black_box(&y), DEFAULT_GUARD, exec).unwrap())
        });
    }
    g.finish();
}

fn coskeletal(c: &mut Criterion) {
    let x = nerve(&fin_ordinal(3), 4).unwrap().sset;
    let mut g = c.benchmark_group("check_coskeletal2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "N(fin4)"), &exec, |b, &exec| {
            b.iter(|| check_coskeletal2(black_box(&x), DEFAULT_GUARD, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, functors, maps, coskeletal);
criterion_main!(benches);
