use criterion::{criterion_group, criterion_main, Criterion};
use k3cremona::exclusion::{antiflip_exhaustion, exclusion_report};

fn exhaustion(c: &mut Criterion) {
    c.bench_function("antiflip_exhaustion", |b| b.iter(antiflip_exhaustion));
    c.bench_function("exclusion_report 1000", |b| b.iter(|| exclusion_report(1000)));
}

criterion_group!(benches, exhaustion);
criterion_main!(benches);
