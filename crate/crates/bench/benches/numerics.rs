use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mtvlab_core::expansion::{expand_a, expansion_eval_at};
use mtvlab_core::finite_sums::{finite_sum, FiniteSumKind};
use mtvlab_core::quadrature::{a_m_quad, transform, QuadConfig, TransformKind};
use mtvlab_core::series::{a_m_series, mtv};
use mtvlab_core::{EvalConfig, Index};

fn idx(s: &str) -> Index {
    s.parse().expect("valid index")
}

fn series(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let mut g = c.benchmark_group("series");
    for k in ["2", "1,2", "1,1,2"] {
        g.bench_with_input(BenchmarkId::new("mtv", k), &idx(k), |b, k| {
            b.iter(|| mtv(black_box(k), &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("a_m_series z=0.5", k), &idx(k), |b, k| {
            b.iter(|| a_m_series(2, black_box(k), 0.5, &cfg).unwrap())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let cfg = QuadConfig::default();
    let mut g = c.benchmark_group("quadrature");
    g.sample_size(20);
    for k in ["2", "1,2", "2,1,2"] {
        g.bench_with_input(BenchmarkId::new("a_m_quad z=0.9", k), &idx(k), |b, k| {
            b.iter(|| a_m_quad(2, black_box(k), 0.9, &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("psi s=2", k), &idx(k), |b, k| {
            b.iter(|| transform(TransformKind::Psi, black_box(k), 2.0, &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("psi s=2.5", k), &idx(k), |b, k| {
            b.iter(|| transform(TransformKind::Psi, black_box(k), 2.5, &cfg).unwrap())
        });
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let mut g = c.benchmark_group("expansion");
    for k in ["2", "2,1", "1,1,2,1"] {
        let e = expand_a(&idx(k));
        g.bench_with_input(BenchmarkId::new("eval z=0.5", k), &e, |b, e| {
            b.iter(|| expansion_eval_at(black_box(e), 0.5, &cfg).unwrap())
        });
    }
    g.finish();
}

fn finite_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("finite_sums");
    for n in [20u64, 100] {
        g.bench_with_input(BenchmarkId::new("T(1,2,1)", n), &n, |b, &n| {
            b.iter(|| finite_sum(FiniteSumKind::T, &idx("1,2,1"), black_box(n)))
        });
    }
    g.finish();
}

criterion_group!(benches, series, quadrature, expansion, finite_sums);
criterion_main!(benches);
