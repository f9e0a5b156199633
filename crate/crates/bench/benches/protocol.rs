use bcqt_core::protocol::steps::{build_channel, compose_system, step2_cnots};
use bcqt_core::qstate::{Gate, OneQubitGate, QubitLabel};
use bcqt_core::rng::seeded;
use bcqt_core::{
    control_power, derive_correction_table, enumerate_branches, run_protocol, InputState, RunMode,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn inputs() -> (InputState, InputState) {
    (InputState::probe_alice(), InputState::probe_bob())
}

fn gates(c: &mut Criterion) {
    let (a, b) = inputs();
    let s = compose_system(&build_channel(), &a, &b).unwrap();
    let h = Gate::single(OneQubitGate::H, QubitLabel::C1);
    let cx = Gate::cnot(QubitLabel::A, QubitLabel::A1);
    c.bench_function("apply_h_8q", |bn| {
        bn.iter(|| black_box(&s).apply(&h).unwrap())
    });
    c.bench_function("apply_cnot_8q", |bn| {
        bn.iter(|| black_box(&s).apply(&cx).unwrap())
    });
    c.bench_function("step2_cnots", |bn| {
        bn.iter(|| step2_cnots(black_box(&s)).unwrap())
    });
}

fn protocol(c: &mut Criterion) {
    let (a, b) = inputs();
    let mut rng = seeded(1);
    c.bench_function("run_protocol_sampled", |bn| {
        bn.iter(|| run_protocol(&a, &b, RunMode::Sampled(&mut rng)).unwrap())
    });
    c.bench_function("enumerate_branches", |bn| {
        bn.iter(|| enumerate_branches(&a, &b).unwrap())
    });
    c.bench_function("control_power", |bn| {
        bn.iter(|| control_power(&a, &b).unwrap())
    });
}

fn corrections(c: &mut Criterion) {
    let mut g = c.benchmark_group("corrections");
    g.sample_size(10);
    g.bench_function("derive_correction_table", |bn| {
        bn.iter(|| derive_correction_table().unwrap())
    });
    g.finish();
}

criterion_group!(benches, gates, protocol, corrections);
criterion_main!(benches);
