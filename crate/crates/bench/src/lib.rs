//! Benchmark fixtures with fixed seeds.

use spancalc::fincat::{Diagram, FinCategory, Functor};
use spancalc::nerve::SquareNerve;
use spancalc::pushpull::{EdgeSystem, ThetaBase, TwoMorphism};
use spancalc::random::{random_edge_system, random_free_category, random_poset_diagram, rng};
use spancalc::span::SpanShape;

pub struct KanInstance {
    pub a: FinCategory,
    pub b: FinCategory,
    pub f: Functor,
    pub g: Diagram,
}

pub fn kan_instance(seed: u64) -> KanInstance {
    let mut r = rng(seed);
    loop {
        let a = random_free_category(&mut r, 3, 0.5, 8);
        let b = random_free_category(&mut r, 4, 0.6, 12);
        if let Some(f) = a.random_functor(&mut r, &b.category) {
            let g = a.random_diagram(&mut r, 1, 3);
            return KanInstance { a: a.category, b: b.category, f, g };
        }
    }
}

pub fn square_nerve(seed: u64, objects: usize) -> SquareNerve {
    let mut r = rng(seed);
    SquareNerve::new(random_free_category(&mut r, objects, 0.5, 14).category)
}

pub fn replacement_instance(seed: u64, k: usize, l: usize) -> (SpanShape, Diagram) {
    let shape = SpanShape::new(&[k], &[l]);
    let (gen_cat, _) = shape.generating_inclusion();
    let g = random_poset_diagram(&mut rng(seed), &gen_cat, 1, 4);
    (shape, g)
}

/// A composable pair over point feet with `n x n` tables of dimension `d`.
pub fn square_tables(n: usize, d: usize) -> (TwoMorphism, TwoMorphism) {
    let table = vec![vec![d; n]; n];
    let x = TwoMorphism::over_points(&table).expect("rectangular");
    let y = TwoMorphism::over_points(&table).expect("rectangular");
    let y = TwoMorphism::new(x.m.clone(), y.m, y.payload).expect("same middle span");
    (x, y)
}

pub fn spine(seed: u64, level: usize) -> (ThetaBase, Vec<Vec<EdgeSystem>>) {
    let mut r = rng(seed);
    let base = ThetaBase::new(vec![2; level + 1]).expect("positive sizes");
    let spine = (0..level).map(|k| vec![random_edge_system(&mut r, base.face_size(&[k, k + 1]), 1, 2)]).collect();
    (base, spine)
}
