use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ptdeco_bench::{oracle_bath, test_matrix};
use ptdeco_core::dephasing::{gamma_for_bath, SpectralDensity};
use ptdeco_core::linalg::{eig_general, mat_exp, DEFAULT_TOL};
use ptdeco_core::oracle::{brute_force_dynamics, default_initial_state};

fn gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma");
    let fig1 = SpectralDensity::figure1();
    let ohmic = SpectralDensity::new(1.0, 0.0, 100.0).unwrap();
    for t in [1.0, 20.0] {
        group.bench_with_input(BenchmarkId::new("sub_ohmic", t), &t, |b, &t| {
            b.iter(|| gamma_for_bath(&fig1, 0.5, black_box(t), 1e-10).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ohmic_wide_cutoff", t), &t, |b, &t| {
            b.iter(|| gamma_for_bath(&ohmic, 1.0, black_box(t), 1e-10).unwrap())
        });
    }
    group.finish();
}

fn dense(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense");
    for n in [4, 16, 64] {
        let a = test_matrix(n);
        group.bench_with_input(BenchmarkId::new("mat_exp", n), &a, |b, a| b.iter(|| mat_exp(black_box(a)).unwrap()));
        group.bench_with_input(BenchmarkId::new("eig_general", n), &a, |b, a| {
            b.iter(|| eig_general(black_box(a), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let times: Vec<f64> = (0..26).map(|k| 0.2 * k as f64).collect();
    for fock in [3, 5] {
        let bath = oracle_bath(fock);
        group.bench_with_input(BenchmarkId::new("brute_force", fock), &bath, |b, bath| {
            b.iter(|| brute_force_dynamics(0.6, bath, 0.5, &default_initial_state(), &times).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gamma, dense, oracle);
criterion_main!(benches);
