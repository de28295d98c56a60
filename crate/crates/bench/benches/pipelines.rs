use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use minflat_core::constructions::{
    catalog, catalog_ids, construct_pencil_3torus, construct_rational, RationalPipelineConfig,
    Require,
};
use minflat_core::immersion::verify_matrix_data;
use minflat_core::lattice::enumerate_norm;
use minflat_core::linalg::SymMatrix;
use minflat_core::optimize::maximize_logdet_c;
use minflat_core::scalar::Scalar;

fn verify_catalog(c: &mut Criterion) {
    let data: Vec<_> = catalog_ids()
        .iter()
        .map(|(id, _)| catalog(id).unwrap())
        .collect();
    c.bench_function("verify catalog", |b| {
        b.iter(|| {
            for d in &data {
                black_box(verify_matrix_data(d, 1e-10));
            }
        })
    });
}

fn pencil(c: &mut Criterion) {
    let y = catalog("ex-rank5").unwrap().y;
    c.bench_function("pencil ex-rank5", |b| {
        b.iter(|| construct_pencil_3torus(black_box(&y), Require::Rank5).unwrap())
    });
    let y4 = catalog("quartic-s7").unwrap().y;
    c.bench_function("rank-4 quartic", |b| {
        b.iter(|| construct_pencil_3torus(black_box(&y4), Require::Rank4).unwrap())
    });
}

fn rational(c: &mut Criterion) {
    let cfg = RationalPipelineConfig::new(SymMatrix::identity(3), 1);
    c.bench_function("rational pipeline I3", |b| {
        b.iter(|| construct_rational(black_box(&cfg)).unwrap())
    });
}

fn optimizer(c: &mut Criterion) {
    let y = catalog("cubic-s7-a").unwrap().y;
    c.bench_function("logdet C cubic-s7-a", |b| {
        b.iter(|| maximize_logdet_c(black_box(&y), 1e-12, 200).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let q: SymMatrix<Scalar> = SymMatrix::identity(4);
    let mut g = c.benchmark_group("enumerate I4");
    for t in [1i64, 25, 100] {
        g.bench_function(format!("norm {t}"), |b| {
            b.iter(|| enumerate_norm(&q, &Scalar::from(t), None).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    verify_catalog,
    pencil,
    rational,
    optimizer,
    enumeration
);
criterion_main!(benches);
