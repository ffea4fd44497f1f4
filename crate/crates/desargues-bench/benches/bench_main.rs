use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use desargues_bench::{fixture_matrix, fixture_subspace};
use desargues_core::boolean::{exhaustive_scan, GroundSet};
use desargues_core::desargues::{desargues_check, generate_desarguesian};
use desargues_core::measure::{run_experiment_pair, StateVector};
use desargues_core::worked_example;

fn exact_linear_algebra(c: &mut Criterion) {
    let m = fixture_matrix(1, 8, 8);
    c.bench_function("rcef 8x8", |b| b.iter(|| black_box(&m).rcef()));
    c.bench_function("null_space 8x8", |b| b.iter(|| black_box(&m).null_space()));

    let a = fixture_subspace(2, 6, 3);
    let b2 = fixture_subspace(3, 6, 3);
    c.bench_function("meet d=6", |b| {
        b.iter(|| black_box(&a).meet(black_box(&b2)).unwrap())
    });
    c.bench_function("join d=6", |b| {
        b.iter(|| black_box(&a).join(black_box(&b2)).unwrap())
    });
    c.bench_function("projector d=6 k=3", |b| b.iter(|| black_box(&a).projector()));
}

fn boolean_scan(c: &mut Criterion) {
    let ground = GroundSet::new(3).unwrap();
    c.bench_function("boolean scan n=3", |b| {
        b.iter(|| exhaustive_scan(black_box(ground)).unwrap())
    });
}

fn desargues_pipeline(c: &mut Criterion) {
    c.bench_function("generate desarguesian d=5", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            generate_desarguesian(black_box(seed), 5).unwrap()
        })
    });

    let config = worked_example::config();
    c.bench_function("desargues_check worked example", |b| {
        b.iter(|| desargues_check(black_box(&config)).unwrap())
    });

    let state = worked_example::reference_state();
    c.bench_function("experiment pair worked example", |b| {
        b.iter(|| run_experiment_pair(black_box(&config), black_box(&state)).unwrap())
    });

    let generated = generate_desarguesian(3, 7).unwrap();
    c.bench_function("desargues_check generated d=7", |b| {
        b.iter(|| desargues_check(black_box(&generated)).unwrap())
    });

    let _ = StateVector::new(state.amplitudes().to_vec());
}

criterion_group!(benches, exact_linear_algebra, boolean_scan, desargues_pipeline);
criterion_main!(benches);
