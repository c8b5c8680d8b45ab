use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ginlab_core::groebner::buchberger;
use ginlab_core::pipeline::{compute_gin, generic_templates, sample_ideal, GinRequest, Route};
use ginlab_core::series::froeberg_lexsegment;
use ginlab_core::{BaseOrder, Gf32003, MonomialOrder, Rational};

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    let inst = generic_templates(4, &[2, 2, 2]).unwrap();
    let gf = sample_ideal::<Gf32003>(&inst, 0, 32002, BaseOrder::Lex).unwrap();
    g.bench_function("gf32003 lex n=4 d=2,2,2", |b| {
        b.iter(|| buchberger(black_box(&gf), &MonomialOrder::Lex))
    });
    let inst = generic_templates(4, &[2, 2, 3]).unwrap();
    let q = sample_ideal::<Rational>(&inst, 0, 99, BaseOrder::DegRevLex).unwrap();
    g.bench_function("Q degrevlex n=4 d=2,2,3", |b| {
        b.iter(|| buchberger(black_box(&q), &MonomialOrder::DegRevLex))
    });
    g.finish();
}

fn routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("routes");
    g.sample_size(20);
    let inst = generic_templates(4, &[2, 2, 2]).unwrap();
    let req = GinRequest::new(BaseOrder::Lex, Route::Sampling);
    g.bench_function("sampling lex n=4 d=2,2,2", |b| {
        b.iter(|| compute_gin(&inst, &req).unwrap())
    });
    let inst = generic_templates(3, &[2, 2]).unwrap();
    let req = GinRequest::new(BaseOrder::Lex, Route::Parametric);
    g.bench_function("parametric lex n=3 d=2,2", |b| {
        b.iter(|| compute_gin(&inst, &req).unwrap())
    });
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.bench_function("lexsegment n=4 d=3,3,3", |b| {
        b.iter(|| froeberg_lexsegment(4, black_box(&[3, 3, 3])).unwrap())
    });
    let lex = froeberg_lexsegment(4, &[3, 3, 3]).unwrap().ideal;
    g.bench_function("hilbert numerator of that ideal", |b| {
        b.iter(|| black_box(&lex).hilbert_numerator())
    });
    g.finish();
}

criterion_group!(benches, groebner, routes, series);
criterion_main!(benches);
