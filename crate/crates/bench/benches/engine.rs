use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stanley_bench::{cm2_pairs, quotients, random_n5};
use stanley_core::depth::koszul_depth;
use stanley_core::filtration::build_clean_cm2;
use stanley_core::stanley::{sdepth_exact, stanley_n5};
use stanley_core::RingContext;

fn depth(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul_depth");
    for f in quotients() {
        let m = f.module();
        g.bench_with_input(BenchmarkId::from_parameter(f.name), &m, |b, m| b.iter(|| koszul_depth(m).unwrap()));
    }
    g.finish();
}

fn cm2(c: &mut Criterion) {
    let mut g = c.benchmark_group("clean_cm2");
    for (name, r, u, i) in cm2_pairs() {
        g.bench_function(name, |b| b.iter(|| build_clean_cm2(&r, &u, &i).unwrap()));
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("stanley_n5");
    for f in quotients() {
        g.bench_function(f.name, |b| b.iter(|| stanley_n5(&f.ring, &f.ideal).unwrap()));
    }
    let r = RingContext::indexed("x", 5).unwrap();
    let batch = random_n5(20);
    g.bench_function("random-batch-20", |b| {
        b.iter(|| batch.iter().map(|i| stanley_n5(&r, i).unwrap().report.sdepth_lb).sum::<usize>())
    });
    g.finish();
}

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("sdepth_exact");
    g.sample_size(10);
    for f in quotients().into_iter().filter(|f| f.name != "cubic-n5") {
        let m = f.module();
        g.bench_with_input(BenchmarkId::from_parameter(f.name), &m, |b, m| b.iter(|| sdepth_exact(m).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, depth, cm2, pipeline, exact);
criterion_main!(benches);
