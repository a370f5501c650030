use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use linkorbit_core::colimit::{coend, flip_disk, g_isomorphic, hocolim_pi0_property_test, representable_diagram};
use linkorbit_core::group::families;
use linkorbit_core::simplex::{to_semisimplicial, verify_functor_on};
use linkorbit_core::LinkOrbitCategory;

fn category(c: &mut Criterion) {
    let mut grp = c.benchmark_group("category");
    for name in ["c4", "s3", "d4", "q8"] {
        let g = families::by_name(name).unwrap();
        grp.bench_with_input(BenchmarkId::new("build", name), &g, |b, g| b.iter(|| LinkOrbitCategory::new(g)));
        let cat = LinkOrbitCategory::new(&g);
        grp.bench_with_input(BenchmarkId::new("axioms", name), &cat, |b, cat| b.iter(|| cat.verify_axioms()));
    }
    grp.finish();
}

fn functor(c: &mut Criterion) {
    let cat = LinkOrbitCategory::new(&families::symmetric(3).unwrap());
    c.bench_function("functor/s3", |b| b.iter(|| verify_functor_on(&cat)));
}

fn coends(c: &mut Criterion) {
    let mut grp = c.benchmark_group("coend");
    for (name, chain) in [("c4", "e<C2<C4"), ("s3", "e<C3<S3")] {
        let cat = Arc::new(LinkOrbitCategory::new(&families::by_name(name).unwrap()));
        let h = cat.object_by_name(chain).unwrap();
        let d = representable_diagram(cat.clone(), h);
        grp.bench_function(BenchmarkId::new("representable", name), |b| b.iter(|| coend(&d).unwrap()));
        let x = coend(&d).unwrap().complex;
        let y = to_semisimplicial(cat.object(h)).complex;
        grp.bench_function(BenchmarkId::new("g_isomorphic", name), |b| b.iter(|| g_isomorphic(&x, &y).unwrap()));
    }
    grp.finish();
}

fn colimits(c: &mut Criterion) {
    c.bench_function("flip_disk", |b| b.iter(|| flip_disk().unwrap()));
    let d4 = families::dihedral(4).unwrap();
    c.bench_function("hocolim_pi0/d4/20", |b| b.iter(|| hocolim_pi0_property_test(0, 20, &d4).unwrap()));
}

criterion_group!(benches, category, functor, coends, colimits);
criterion_main!(benches);
