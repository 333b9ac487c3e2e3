use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cvtele::entanglement::logneg_closed;
use cvtele::fock::{build_state, numeric_logneg};
use cvtele::numerics::{integrate_phase_plane, Envelope, QuadratureSpec};
use cvtele::teleport::{fidelity_closed, fidelity_numeric};
use cvtele::{Complex64, Cutoff, InputKind, ResourceKind, SqueezeParams, StateSpec, TeleportJob};

fn quadrature(c: &mut Criterion) {
    let spec = QuadratureSpec::fixed(64, Envelope::isotropic(1.0));
    c.bench_function("phase-plane gaussian, order 64", |b| {
        b.iter(|| integrate_phase_plane(|a: Complex64| Complex64::from((-a.norm_sqr()).exp()), black_box(&spec)))
    });
}

fn fidelity(c: &mut Criterion) {
    let cat = InputKind::CatLike { rho: 0.313, phase: 0.0 };
    let job = TeleportJob::new(cat, ResourceKind::Tps, 0.5).unwrap();
    c.bench_function("cat fidelity, integral", |b| b.iter(|| fidelity_numeric(black_box(&job))));
    c.bench_function("cat fidelity, gamma operator", |b| b.iter(|| fidelity_closed(black_box(&job))));
}

fn fock(c: &mut Criterion) {
    let sq = SqueezeParams::new(1.0, 0.0).unwrap();
    c.bench_function("subtracted resource, cutoff 60", |b| {
        b.iter(|| build_state(StateSpec::Tps(black_box(sq)), Cutoff::Fixed(60)))
    });
    let state = build_state(StateSpec::Tps(sq), Cutoff::Fixed(60)).unwrap();
    c.bench_function("partial-transpose log-negativity, cutoff 60", |b| {
        b.iter(|| numeric_logneg(black_box(&state)))
    });
    c.bench_function("closed log-negativity", |b| b.iter(|| logneg_closed(ResourceKind::Tps, black_box(1.0))));
}

criterion_group!(kernels, quadrature, fidelity, fock);
criterion_main!(kernels);
