use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crinv::invariants::calibrate_c;
use crinv::quadrature::{calabi_identity_check, CompactMetric, QuadratureScheme, TestFunction};
use crinv::surface::{cartan_s, gauss_identity_residuals, phi_from_rigid_defining, SurfaceChart};
use crinv::GaussianRational;
use crinv_bench::{dense_real, one_plus_zz, rigid_a44};

fn series_mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("series_mul");
    for n in [8, 12, 16] {
        let a = dense_real(n);
        let b = one_plus_zz(n).powi(-2).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, _| bch.iter(|| black_box(&a) * black_box(&b)));
    }
    g.finish();
}

fn elementary(c: &mut Criterion) {
    let s = one_plus_zz(16);
    c.bench_function("reciprocal_16", |b| b.iter(|| black_box(&s).reciprocal().unwrap()));
    c.bench_function("log_16", |b| b.iter(|| black_box(&s).log().unwrap()));
}

fn invariants(c: &mut Criterion) {
    let chart = SurfaceChart::from_conformal_factor(one_plus_zz(16)).unwrap();
    c.bench_function("cartan_s_one_plus_zz_16", |b| b.iter(|| cartan_s(black_box(&chart)).unwrap()));
    let rigid = phi_from_rigid_defining(&rigid_a44((1, 10), 16)).unwrap();
    c.bench_function("identity_residuals_rigid_16", |b| b.iter(|| gauss_identity_residuals(black_box(&rigid)).unwrap()));
    let probes = [GaussianRational::ratio(1, 10), GaussianRational::ratio(1, 16), GaussianRational::ratio(1, 25)];
    c.bench_function("calibrate_c", |b| b.iter(|| calibrate_c(black_box(&probes)).unwrap()));
}

fn quadrature(c: &mut Criterion) {
    let m = CompactMetric::from_ratios(&[(0, 1), (1, 10), (-1, 10)]);
    let s = QuadratureScheme::default();
    c.bench_function("calabi_K_64x128", |b| {
        b.iter(|| calabi_identity_check(&TestFunction::Curvature, black_box(&m), &s).unwrap())
    });
}

criterion_group!(benches, series_mul, elementary, invariants, quadrature);
criterion_main!(benches);
