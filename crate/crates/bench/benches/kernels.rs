use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ncsec_bench::{csi_point, nocsi_point};
use ncsec_core::montecarlo::{simulate_sop_csi, simulate_sop_nocsi};
use ncsec_core::secrecy::{sop_gnc_csi, sop_gnc_csi_theorem1_rational, sop_gnc_nocsi};
use ncsec_core::{GncCsiMethod, GncNoCsiMethod, SamplingMode, Scheme, SimConfig};
use std::hint::black_box;

fn closed_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("gnc_csi");
    for m in [2, 8, 16] {
        let p = csi_point(30.0, m);
        g.bench_with_input(BenchmarkId::new("theorem1", m), &p, |b, p| {
            b.iter(|| sop_gnc_csi(p.rates, black_box(p.g_d), p.g_e, p.params, GncCsiMethod::Theorem1))
        });
        g.bench_with_input(BenchmarkId::new("quadrature", m), &p, |b, p| {
            b.iter(|| sop_gnc_csi(p.rates, black_box(p.g_d), p.g_e, p.params, GncCsiMethod::Quadrature))
        });
    }
    let p = csi_point(30.0, 2);
    g.bench_function("rational/2", |b| {
        b.iter(|| sop_gnc_csi_theorem1_rational(p.rates, black_box(p.g_d), p.g_e, p.params))
    });
    g.finish();

    let p = nocsi_point(30.0);
    c.bench_function("gnc_nocsi/exact_2src", |b| {
        b.iter(|| sop_gnc_nocsi(p.rates, black_box(p.g_d), p.g_e, p.params, GncNoCsiMethod::ExactTwoSource))
    });
}

fn monte_carlo(c: &mut Criterion) {
    const TRIALS: u64 = 1 << 18;
    let cfg = SimConfig { samples: TRIALS, workers: 1, ..SimConfig::default() };
    let mut g = c.benchmark_group("monte_carlo");
    g.throughput(Throughput::Elements(TRIALS));
    g.sample_size(10);

    let p = csi_point(20.0, 2);
    g.bench_function("dt_csi", |b| b.iter(|| simulate_sop_csi(Scheme::Dt, p.rates, p.g_d, p.g_e, &cfg)));
    let it = SimConfig { mode: SamplingMode::InverseTransform, ..cfg };
    g.bench_function("gnc_csi_inverse", |b| {
        b.iter(|| simulate_sop_csi(Scheme::Gnc(p.params), p.rates, p.g_d, p.g_e, &it))
    });
    let p = nocsi_point(20.0);
    g.bench_function("gnc_nocsi_event", |b| {
        b.iter(|| simulate_sop_nocsi(Scheme::Gnc(p.params), p.rates, p.g_d, p.g_e, &cfg))
    });
    g.bench_function("nc_nocsi_event", |b| b.iter(|| simulate_sop_nocsi(Scheme::Nc, p.rates, p.g_d, p.g_e, &cfg)));
    g.finish();
}

criterion_group!(benches, closed_forms, monte_carlo);
criterion_main!(benches);
