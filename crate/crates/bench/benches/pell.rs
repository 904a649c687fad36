use criterion::{black_box, criterion_group, criterion_main, Criterion};
use k3cremona::pell::{find_solution, PellQuery, Units};
use k3cremona::surface::{classify_aut, QuarticLattice};
use num_bigint::BigInt;

fn pell(c: &mut Criterion) {
    // 409 and 661 have long continued-fraction periods.
    for r in [41i64, 409, 661] {
        c.bench_function(&format!("units r={r}"), |b| b.iter(|| Units::of(black_box(&BigInt::from(r)))));
        let q = PellQuery::new(r, -8);
        c.bench_function(&format!("find_solution r={r} n=-8"), |b| b.iter(|| find_solution(black_box(&q))));
    }
    let l = QuarticLattice::canonical(97).unwrap();
    c.bench_function("classify_aut r=97", |b| b.iter(|| classify_aut(black_box(&l))));
}

criterion_group!(benches, pell);
criterion_main!(benches);
