use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use kroncf::{
    analyze, classify, convergents, kronecker_sequence, matrix_at, matrix_at_mod2, AnalysisConfig,
    PeriodicCF,
};
use kroncf_bench::blocks;

fn bench_convergents(c: &mut Criterion) {
    let mut group = c.benchmark_group("convergents");
    let cf = PeriodicCF::from_u64s(&[1, 2, 5]).unwrap();
    for n in [100usize, 1000, 5000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| convergents(black_box(&cf), n))
        });
    }
    group.finish();
}

fn bench_kronecker(c: &mut Criterion) {
    let mut group = c.benchmark_group("kronecker_sequence");
    let cf = PeriodicCF::from_u64s(&[1, 2, 5]).unwrap();
    for n in [100usize, 600, 2000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| kronecker_sequence(black_box(&cf), n))
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for (name, cf) in blocks() {
        group.bench_function(name, |b| b.iter(|| classify(black_box(&cf)).unwrap()));
    }
    group.finish();
}

fn bench_cascade(c: &mut Criterion) {
    let mut group = c.benchmark_group("cascade");
    let cf = PeriodicCF::from_u64s(&[1, 2, 5]).unwrap();
    for depth in [4usize, 8, 12] {
        let config = AnalysisConfig {
            cascade_depth: depth,
            ..AnalysisConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("depth", depth), &config, |b, config| {
            b.iter(|| analyze(black_box(&cf), config).unwrap())
        });
    }
    // one deep matrix: reduced path against the exact recursion
    let k = 907u64;
    group.bench_function("matrix_mod2/907", |b| {
        b.iter(|| matrix_at_mod2(black_box(&cf), k, 128))
    });
    group.bench_function("matrix_exact/907", |b| {
        b.iter(|| matrix_at(black_box(&cf), k).reduce_mod_pow2(128))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_convergents,
    bench_kronecker,
    bench_classify,
    bench_cascade
);
criterion_main!(benches);
