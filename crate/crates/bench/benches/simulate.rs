use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dqsim::algorithms::{grover, unique_sat_discrete};
use dqsim::discrete::bloch_census;
use dqsim::modal::unique_sat_modal;
use dqsim::{FieldSpec, GroverConfig, OracleTable};

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("bloch_census");
    for p in [3u64, 7, 11] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| bloch_census(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn modal_unique_sat(c: &mut Criterion) {
    let mut group = c.benchmark_group("unique_sat_modal");
    for n in [4usize, 8, 12] {
        let f = OracleTable::unique_sat(n, Some(1)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| unique_sat_modal(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn discrete_unique_sat(c: &mut Criterion) {
    let mut group = c.benchmark_group("unique_sat_discrete");
    for (p, n) in [(3u64, 2usize), (7, 3), (7, 6), (7, 12)] {
        let field = FieldSpec::quadratic(p).unwrap();
        let f = OracleTable::unique_sat(n, None).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("p{p}"), n), &f, |b, f| {
            b.iter(|| unique_sat_discrete(black_box(f), field).unwrap())
        });
    }
    group.finish();
}

fn grover_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("grover");
    for (size, p) in [(4u64, 7u64), (16, 7), (64, 11)] {
        let cfg = GroverConfig::new(size, FieldSpec::quadratic(p).unwrap(), None).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("p{p}"), size), &cfg, |b, cfg| {
            b.iter(|| grover(black_box(1), cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census, modal_unique_sat, discrete_unique_sat, grover_search);
criterion_main!(benches);
