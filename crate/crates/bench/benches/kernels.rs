use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jgk_core::exactla::{rank, Matrix};
use jgk_core::field::{Conductor, FieldElem};
use jgk_core::liecore::killing;
use jgk_core::pipeline::{self, ModelId};
use jgk_core::verify::{grading_compat, jacobi_sweep, jordan_certificate, JacobiMode};

fn field(c: &mut Criterion) {
    let z = FieldElem::root_of_unity(Conductor::Five, 1);
    let a = z.try_add(&FieldElem::frac(3, 7)).unwrap();
    let b = z.pow(3).try_add(&FieldElem::frac(-11, 4)).unwrap();
    c.bench_function("field/mul_q_zeta5", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("field/inv_q_zeta5", |bench| bench.iter(|| black_box(&a).inv().unwrap()));
}

fn linear_algebra(c: &mut Criterion) {
    let z = FieldElem::root_of_unity(Conductor::Five, 1);
    let rows: Vec<Vec<FieldElem>> = (0..12)
        .map(|i| {
            (0..12)
                .map(|j| z.pow((i * j % 5) as u32).try_add(&FieldElem::from_int((i + 2 * j) as i64)).unwrap())
                .collect()
        })
        .collect();
    let m = Matrix::from_dense(&rows);
    c.bench_function("exactla/rank_12x12_q_zeta5", |bench| bench.iter(|| rank(black_box(&m))));
}

fn lie(c: &mut Criterion) {
    let g2 = pipeline::build(ModelId::G2Z2).unwrap();
    let e6 = pipeline::build(ModelId::E6Z3).unwrap();
    c.bench_function("liecore/killing_g2", |bench| bench.iter(|| killing(black_box(&g2.algebra))));
    c.bench_function("liecore/killing_e6", |bench| bench.iter(|| killing(black_box(&e6.algebra))));
    c.bench_function("verify/jacobi_full_g2", |bench| {
        bench.iter(|| jacobi_sweep(&g2.algebra, JacobiMode::Full))
    });
    c.bench_function("verify/jacobi_sample_e6_10k", |bench| {
        bench.iter(|| jacobi_sweep(&e6.algebra, JacobiMode::Sample { n: 10_000, seed: 0 }))
    });
}

fn pipeline_stages(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("build_e6", |bench| bench.iter(|| pipeline::build(ModelId::E6Z3).unwrap()));
    let e6 = pipeline::build(ModelId::E6Z3).unwrap();
    group.bench_function("grade_e6", |bench| bench.iter(|| pipeline::grade(&e6, false).unwrap()));
    let g = pipeline::grade(&e6, false).unwrap().grading.unwrap();
    group.bench_function("grading_compat_e6", |bench| bench.iter(|| grading_compat(&e6.algebra, &g)));
    group.bench_function("jordan_certificate_e6", |bench| {
        bench.iter(|| jordan_certificate(&e6.algebra, &g, 3))
    });
    group.finish();
}

criterion_group!(benches, field, linear_algebra, lie, pipeline_stages);
criterion_main!(benches);
