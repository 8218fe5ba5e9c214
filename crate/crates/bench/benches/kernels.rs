use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use spancalc::crw::{koszul_intersection, Generator, GradedRing};
use spancalc::fincat::{right_kan, right_kan_end};
use spancalc::nerve::{build_path, labelled_limit, nondegenerate};
use spancalc::pushpull::{compose2_vertical, synthesize_filling};
use spancalc::simplex::{build_sigma, build_theta};
use spancalc::span::{direct_replacement, replacement_on_top_cells};
use spancalc_bench::*;

fn posets(c: &mut Criterion) {
    c.bench_function("sigma_8", |b| b.iter(|| build_sigma(black_box(8))));
    c.bench_function("theta_6", |b| b.iter(|| build_theta(black_box(6))));
}

fn kan(c: &mut Criterion) {
    let k = kan_instance(1);
    c.bench_function("right_kan_limit", |b| b.iter(|| right_kan(&k.a, &k.b, &k.f, &k.g, black_box(0))));
    c.bench_function("right_kan_end", |b| b.iter(|| right_kan_end(&k.a, &k.b, &k.f, &k.g, black_box(0))));
}

fn nerves(c: &mut Criterion) {
    let p = build_path(4).unwrap();
    c.bench_function("nondegenerate_2_2_l4", |b| b.iter(|| nondegenerate(&p, black_box(2), black_box(2))));
    let x = square_nerve(2, 4);
    c.bench_function("labelled_limit_2", |b| b.iter(|| labelled_limit(&x, black_box(2))));
}

fn replacement(c: &mut Criterion) {
    let (shape, g) = replacement_instance(3, 3, 3);
    let top = shape.size() - 1;
    c.bench_function("replacement_generic_3_3", |b| b.iter(|| replacement_on_top_cells(&shape, &g, black_box(top))));
    c.bench_function("replacement_direct_3_3", |b| b.iter(|| direct_replacement(&shape, &g, black_box(top))));
}

fn pushpull(c: &mut Criterion) {
    let (x, y) = square_tables(4, 3);
    c.bench_function("compose2_vertical_4", |b| b.iter(|| compose2_vertical(black_box(&x), black_box(&y))));
    let (base, spine) = spine(4, 3);
    c.bench_function("synthesize_filling_3", |b| b.iter(|| synthesize_filling(&base, &spine)));
}

fn crw(c: &mut Criterion) {
    let amb = GradedRing::new(vec![Generator::even("x", 1), Generator::even("y", 5)], vec![]).unwrap();
    let graph = amb.parse("y - x^5").unwrap();
    let zero = amb.parse("y").unwrap();
    let a = koszul_intersection(&amb, &[graph], &[zero]).unwrap();
    c.bench_function("crit_locus_cohomology_5", |b| b.iter(|| a.cohomology(black_box(10))));
}

criterion_group!(benches, posets, kan, nerves, replacement, pushpull, crw);
criterion_main!(benches);
