//! Criterion benchmarks for the hot paths: universal-property search,
//! concrete set-level limit formulas, natural-transformation enumeration,
//! adjoint synthesis, topos structure, and language loading.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cathedra::adjunction::synthesize_left_adjoint;
use cathedra::caps::Caps;
use cathedra::cat::{FiniteCategory, Obj};
use cathedra::corpus;
use cathedra::finset::{enumerate_set_nats, FinFunction, FinSet, SetFunctor};
use cathedra::functor::Functor;
use cathedra::limits::{colimit, limit, limit_cat, limit_via_products_equalizers, Diagram};
use cathedra::presheaf::{density, representable, subobject_classifier};

fn obj_by_label(c: &FiniteCategory, label: &str) -> Obj {
    c.objects()
        .find(|&o| c.obj_label(o) == label)
        .expect("label present")
}

/// The two-object diagram in `Div36` picking out 4 and 6; its limit is
/// their greatest common divisor.
fn gcd_diagram() -> Functor {
    let amb = corpus::by_name("Div36").unwrap();
    let shape = corpus::discrete(2);
    let four = obj_by_label(&amb, "4");
    let six = obj_by_label(&amb, "6");
    let morphism_map = vec![amb.id(four), amb.id(six)];
    Functor::new("pair", shape, Arc::clone(&amb), vec![four, six], morphism_map).unwrap()
}

/// A pullback-shaped diagram of finite sets with overlapping fibres.
fn pullback_diagram() -> SetFunctor {
    let shape = corpus::cospan();
    let base = FinSet::from_tokens(["x", "y"]);
    let left = FinSet::from_tokens(["a0", "a1", "a2", "a3"]);
    let right = FinSet::from_tokens(["b0", "b1", "b2"]);
    let l = FinFunction::new(left.clone(), base.clone(), vec![0, 1, 0, 1]).unwrap();
    let r = FinFunction::new(right.clone(), base.clone(), vec![0, 0, 1]).unwrap();
    SetFunctor::new(
        "pullback",
        shape,
        vec![base.clone(), left, right],
        vec![
            FinFunction::identity(&base),
            FinFunction::identity(&l.dom),
            FinFunction::identity(&r.dom),
            l,
            r,
        ],
    )
    .unwrap()
}

fn bench_limits(c: &mut Criterion) {
    let caps = Caps::default();
    let d = gcd_diagram();
    c.bench_function("limit_search_div36_product", |b| {
        b.iter(|| limit_cat(black_box(&d), &caps).unwrap())
    });

    let sd = Diagram::Set(pullback_diagram());
    c.bench_function("set_limit_formula_pullback", |b| {
        b.iter(|| limit(black_box(&sd), &caps).unwrap())
    });
    c.bench_function("set_limit_products_equalizers_pullback", |b| {
        b.iter(|| limit_via_products_equalizers(black_box(&sd), &caps).unwrap())
    });
    c.bench_function("set_colimit_formula_pullback_shape", |b| {
        b.iter(|| colimit(black_box(&sd), &caps).unwrap())
    });
}

fn bench_nat_enumeration(c: &mut Criterion) {
    let caps = Caps::default();
    let base = corpus::by_name("Subsets2").unwrap();
    let top = obj_by_label(&base, "{1,2}");
    let bottom = obj_by_label(&base, "{}");
    let h_top = representable(&base, top).as_diagram();
    let h_bottom = representable(&base, bottom).as_diagram();
    c.bench_function("nat_enumeration_subsets2_representables", |b| {
        b.iter(|| enumerate_set_nats(black_box(&h_bottom), black_box(&h_top), &caps).unwrap())
    });
}

fn bench_adjoint(c: &mut Criterion) {
    let caps = Caps::default();
    let incl = corpus::sierpinski_inclusion();
    c.bench_function("adjoint_synthesis_closure", |b| {
        b.iter(|| synthesize_left_adjoint(black_box(&incl), &caps).unwrap())
    });
}

fn bench_topos(c: &mut Criterion) {
    let caps = Caps::default();
    let div12 = corpus::by_name("Div12").unwrap();
    c.bench_function("subobject_classifier_div12", |b| {
        b.iter(|| subobject_classifier(black_box(&div12), &caps).unwrap())
    });

    let base = corpus::by_name("Subsets2").unwrap();
    let top = obj_by_label(&base, "{1,2}");
    let x = representable(&base, top);
    c.bench_function("density_subsets2_representable", |b| {
        b.iter(|| density(black_box(&x), &caps).unwrap())
    });
}

fn bench_language(c: &mut Criterion) {
    let caps = Caps::default();
    let text = "\
        poset Div12 { elements 1, 2, 3, 4, 6, 12; order divides }\n\
        category Pair { objects l, r }\n\
        functor D : Pair -> Div12 { on l = 4; on r = 6; }\n\
        task limit of D in Div12;\n\
        task colimit of D in Div12;\n";
    c.bench_function("language_load_divisor_document", |b| {
        b.iter(|| catlang::load(black_box(text), &caps).unwrap())
    });
}

criterion_group!(
    benches,
    bench_limits,
    bench_nat_enumeration,
    bench_adjoint,
    bench_topos,
    bench_language
);
criterion_main!(benches);
