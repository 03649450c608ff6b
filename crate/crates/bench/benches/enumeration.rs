use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wcob_bench::build;
use wcob_core::constructions::ConstructionKind;
use wcob_core::wald::WaldhausenInstance;

fn constructions(c: &mut Criterion) {
    let pointed = WaldhausenInstance::finpointed(2).unwrap();
    let inj = WaldhausenInstance::finset_inj(2);
    let mut g = c.benchmark_group("enumerate");
    for kind in ConstructionKind::ALL {
        g.bench_with_input(BenchmarkId::new(kind.name(), "finpointed:2 depth 2"), &kind, |b, &k| {
            b.iter(|| build(k, &pointed, 2).counts())
        });
    }
    for kind in [ConstructionKind::Cob, ConstructionKind::CobSym] {
        g.bench_with_input(BenchmarkId::new(kind.name(), "finset_inj:2 depth 2"), &kind, |b, &k| {
            b.iter(|| build(k, &inj, 2).counts())
        });
    }
    g.finish();
}

fn weq_categories(c: &mut Criterion) {
    let inj = WaldhausenInstance::finset_inj(2);
    let cob = build(ConstructionKind::Cob, &inj, 2);
    c.bench_function("materialize weq Cob_2 finset_inj:2", |b| {
        b.iter(|| cob.level(2).weq_subcategory().materialize().1.len())
    });
}

criterion_group!(benches, constructions, weq_categories);
criterion_main!(benches);
