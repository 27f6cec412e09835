use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use matvar_core::{
    count_fixed_subspaces, jordan_type_of, FieldSpec, JordanData, Matrix, Partition,
    VarietyDescriptor,
};

fn bench_count_fixed(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_fixed_subspaces");
    for q in [5u64, 11] {
        let gamma = Partition::new(vec![3, 1]).unwrap();
        let rep = VarietyDescriptor::U(gamma)
            .representative(FieldSpec::Prime(q))
            .unwrap();
        group.bench_function(format!("nilpotent_3_1/d2/q{q}"), |b| {
            b.iter(|| count_fixed_subspaces(black_box(&rep), 2).unwrap())
        });
    }
    let scalar = Matrix::identity(FieldSpec::Prime(7), 5);
    group.bench_function("identity_n5/d2/q7", |b| {
        b.iter(|| count_fixed_subspaces(black_box(&scalar), 2).unwrap())
    });
    group.finish();
}

fn bench_jordan_extraction(c: &mut Criterion) {
    let delta = JordanData::new(vec![
        Partition::new(vec![2, 1]).unwrap(),
        Partition::new(vec![2]).unwrap(),
        Partition::new(vec![1]).unwrap(),
    ])
    .unwrap();
    let rep = delta.representative(FieldSpec::Rational).unwrap();
    c.bench_function("jordan_type_of/rational_6x6", |b| {
        b.iter(|| jordan_type_of(black_box(&rep)).unwrap())
    });
}

fn bench_rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let q = FieldSpec::Rational;
    c.bench_function("rank/rational_8x8", |b| {
        b.iter_batched(
            || Matrix::from_fn(q, 8, 8, |_, _| q.from_i64(rng.random_range(-9..=9))),
            |m| black_box(m.rank()),
            BatchSize::SmallInput,
        )
    });
}

fn bench_char_poly(c: &mut Criterion) {
    let f7 = FieldSpec::Prime(7);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let m = Matrix::from_fn(f7, 8, 8, |_, _| f7.from_i64(rng.random_range(0..7)));
    c.bench_function("char_poly/f7_8x8", |b| {
        b.iter(|| black_box(&m).char_poly().unwrap())
    });
}

criterion_group!(
    benches,
    bench_count_fixed,
    bench_jordan_extraction,
    bench_rank,
    bench_char_poly
);
criterion_main!(benches);
