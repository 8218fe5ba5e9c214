//! Property suites run by `spancalc verify`: each property reports whether it
//! held on every case and dumps the first counterexample otherwise.

use std::collections::BTreeSet;
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crw::{
    adjunction_dims, build_intro_algebras, koszul_intersection, AlgebraMap, DGModule, Generator, GradedDGAlgebra,
    GradedRing, ModuleGenerator, Parity, Poly,
};
use crate::error::{Error, Result};
use crate::fincat::{nat_bruteforce, nat_from_end, right_kan, right_kan_end, FinCategory};
use crate::linalg::Matrix;
use crate::nerve::{
    build_cq, build_path, labelled_limit, nerve_chains, nondegenerate, spine_simplex, square_n, xi, xi_simplex,
    Bisimplicial, FinSymMonCat, SquareNerve, GRID_LIMIT,
};
use crate::pushpull::{
    check_adjunction, compose2_vertical, find_iso, is_diagram_iso, is_pushpull, synthesize_filling, transport,
    vertical_left_unit_chain, vertical_right_unit_chain, EdgeSystem, IsoSearch, ThetaBase, TwoMorphism, VectorFamily,
};
use crate::random::{
    random_edge_isos, random_edge_system, random_family, random_free_category, random_function, random_poset_diagram,
    rng, TestRng,
};
use crate::rational::{q, Q};
use crate::simplex::{build_sigma, build_theta, push_sigma, push_theta, MonotoneMap};
use crate::span::{
    associator, compose_spans, direct_replacement, is_bijection, is_span_map, left_unit_map, replacement_on_top_cells,
    right_unit_map, Span, SpanShape,
};

pub const SUITES: [&str; 5] = ["posets", "nerve", "spans", "pushpull", "crw"];

/// Largest level accepted by the suites.
pub const MAX_BOUND: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest level or label size exercised.
    pub bound: usize,
    /// Restricts the critical-locus checks to this exponent.
    pub n: Option<u32>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, bound: 4, n: None }
    }
}

struct Prop {
    result: PropertyResult,
}

impl Prop {
    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.result.cases += 1;
        if !ok && self.result.passed {
            self.result.passed = false;
            self.result.counterexample = Some(counterexample());
        }
    }
}

fn property(suite: &'static str, name: &'static str, body: impl FnOnce(&mut Prop) -> Result<()>) -> PropertyResult {
    let mut p = Prop { result: PropertyResult { suite, property: name, passed: true, cases: 0, counterexample: None } };
    if let Err(e) = body(&mut p) {
        p.result.passed = false;
        p.result.counterexample = Some(json!({ "error": e.to_string() }));
    }
    p.result
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    if cfg.bound == 0 || cfg.bound > MAX_BOUND {
        return Err(Error::BoundExceeded(format!("bound must be in 1..={MAX_BOUND}, got {}", cfg.bound)));
    }
    Ok(match name {
        "posets" => posets(cfg),
        "nerve" => nerve(cfg),
        "spans" => spans(cfg),
        "pushpull" => pushpull(cfg),
        "crw" => crw(cfg)?,
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, cfg)?);
            }
            out
        }
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    })
}

fn posets(cfg: &SuiteConfig) -> Vec<PropertyResult> {
    let b = cfg.bound;
    let mut out = vec![
        property("posets", "sigma_counts", |p| {
            for n in 0..=b {
                let s = build_sigma(n);
                let (objs, lambda) = (s.objects.len(), s.lambda.iter().filter(|&&f| f).count());
                p.case(
                    objs == (n + 1) * (n + 2) / 2 && lambda == 2 * n + 1,
                    || json!({ "n": n, "objects": objs, "lambda": lambda }),
                );
            }
            Ok(())
        }),
        property("posets", "theta_counts", |p| {
            for n in 0..=b {
                let t = build_theta(n);
                let (objs, xi) = (t.objects.len(), t.xi.iter().filter(|&&f| f).count());
                p.case(objs == (1 << (n + 1)) - 1 && xi == n + 1, || json!({ "n": n, "objects": objs, "xi": xi }));
            }
            Ok(())
        }),
    ];
    out.push(property("posets", "pushes_are_functorial", |p| {
        let mut r = rng(cfg.seed);
        for _ in 0..100 {
            let (n, m, k) = (r.gen_range(0..=b), r.gen_range(0..=b), r.gen_range(0..=b));
            let (a, c) = (random_monotone(&mut r, n, m), random_monotone(&mut r, m, k));
            let ca = c.compose(&a)?;
            let sigma = build_sigma(n);
            let phi = &sigma.objects[r.gen_range(0..sigma.objects.len())];
            let (one, two) = (push_sigma(&ca, phi)?, push_sigma(&c, &push_sigma(&a, phi)?)?);
            p.case(one == two, || json!({ "alpha": a.values(), "beta": c.values(), "phi": phi.values() }));
            let theta = build_theta(n);
            let s = &theta.objects[r.gen_range(0..theta.objects.len())];
            let (one, two) = (push_theta(&ca, s)?, push_theta(&c, &push_theta(&a, s)?)?);
            p.case(one == two, || json!({ "alpha": a.values(), "beta": c.values(), "subset": s }));
        }
        Ok(())
    }));
    out.push(property("posets", "right_kan_equals_end", |p| {
        let mut r = rng(cfg.seed.wrapping_add(1));
        let mut done = 0;
        while done < 100 {
            let (na, nb) = (r.gen_range(1..=3), r.gen_range(1..=4));
            let a = random_free_category(&mut r, na, 0.5, 8);
            let bc = random_free_category(&mut r, nb, 0.6, 12);
            let Some(f) = a.random_functor(&mut r, &bc.category) else { continue };
            let g = a.random_diagram(&mut r, 0, 3);
            for obj in 0..nb {
                let (_, lim) = right_kan(&a.category, &bc.category, &f, &g, obj);
                let mut apex = lim.apex.clone();
                apex.sort();
                let end = right_kan_end(&a.category, &bc.category, &f, &g, obj)?;
                p.case(apex == end, || json!({ "functor": f.on_objects, "sizes": g.sizes, "object": obj, "kan": apex.len(), "end": end.len() }));
            }
            done += 1;
        }
        Ok(())
    }));
    out.push(property("posets", "end_of_hom_is_nat", |p| {
        let mut r = rng(cfg.seed.wrapping_add(2));
        for _ in 0..100 {
            let n = r.gen_range(1..=3);
            let c = random_free_category(&mut r, n, 0.5, 8);
            let (f, g) = (c.random_diagram(&mut r, 0, 2), c.random_diagram(&mut r, 0, 3));
            let (end, brute) = (nat_from_end(&f, &g)?, nat_bruteforce(&f, &g));
            p.case(
                end == brute,
                || json!({ "edges": c.edges, "f": f.sizes, "g": g.sizes, "end": end.len(), "brute": brute.len() }),
            );
        }
        Ok(())
    }));
    out
}

fn random_monotone(r: &mut TestRng, n: usize, m: usize) -> MonotoneMap {
    let mut v: Vec<usize> = (0..=n).map(|_| r.gen_range(0..=m)).collect();
    v.sort_unstable();
    MonotoneMap::new(n, m, v).expect("sorted values")
}

/// `𝔡X_0`, `𝔡X_1`, `𝔡X_2` for `X = □²(N C)`: one element per object, per
/// arrow, and per pair (composable pair, square whose top edge is the
/// composite and whose bottom edge has the same endpoints).
pub fn labelled_limit_closed_forms(x: &SquareNerve) -> Result<std::result::Result<(), Value>> {
    let l0 = labelled_limit(x, 0)?;
    if l0.len() != x.size(0, 0)? {
        return Ok(Err(json!({ "level": 0, "limit": l0.len(), "objects": x.size(0, 0)? })));
    }
    let l1 = labelled_limit(x, 1)?;
    let edge = spine_simplex(1);
    let comps: BTreeSet<usize> = (0..l1.len()).map(|e| l1.component(e, &edge)).collect();
    if (comps.len(), l1.len()) != (x.size(1, 0)?, x.size(1, 0)?) {
        return Ok(Err(json!({ "level": 1, "limit": l1.len(), "arrows": x.size(1, 0)? })));
    }
    let l2 = labelled_limit(x, 2)?;
    let (spine, tau) = (spine_simplex(2), xi_simplex(2)?);
    let pairs: BTreeSet<(usize, usize)> =
        (0..l2.len()).map(|e| (l2.component(e, &spine), l2.component(e, &tau))).collect();
    let cat = &x.category;
    let mut expected = BTreeSet::new();
    let squares = x.cells(1, 1)?;
    let chains = x.cells(2, 0)?;
    for (i, c) in chains.grids.iter().enumerate() {
        let composite = cat.compose(c.step(&[1, 0], 0), c.step(&[0, 0], 0)).expect("composable");
        let ends = (c.object_at(&[0, 0]), c.object_at(&[2, 0]));
        for (j, s) in squares.grids.iter().enumerate() {
            if s.step(&[0, 1], 0) == composite && (s.object_at(&[0, 0]), s.object_at(&[1, 0])) == ends {
                expected.insert((i, j));
            }
        }
    }
    if pairs.len() != l2.len() || pairs != expected {
        return Ok(Err(json!({ "level": 2, "limit": l2.len(), "expected": expected.len() })));
    }
    Ok(Ok(()))
}

/// Nerve chains against `□²_{k,0}`, and squares against pairs of triangles
/// with a common composite.
pub fn square_facts(cat: &FinCategory) -> Result<std::result::Result<(), Value>> {
    for k in 0..=3 {
        let chains: BTreeSet<Vec<usize>> = nerve_chains(cat, k).into_iter().collect();
        let grids = square_n(cat, &[k, 0], GRID_LIMIT)?;
        let from_grids: BTreeSet<Vec<usize>> =
            grids
                .iter()
                .map(|g| {
                    if k == 0 {
                        vec![cat.identity(g.objects[0])]
                    } else {
                        (0..k).map(|i| g.step(&[i, 0], 0)).collect()
                    }
                })
                .collect();
        if from_grids.len() != grids.len() || chains != from_grids {
            return Ok(Err(json!({ "k": k, "chains": chains.len(), "grids": grids.len() })));
        }
    }
    let squares = square_n(cat, &[1, 1], GRID_LIMIT)?;
    let images: BTreeSet<(Vec<usize>, Vec<usize>)> = squares
        .iter()
        .map(|s| (vec![s.step(&[0, 0], 0), s.step(&[1, 0], 1)], vec![s.step(&[0, 0], 1), s.step(&[0, 1], 0)]))
        .collect();
    let twos = nerve_chains(cat, 2);
    let mut pullback = BTreeSet::new();
    for a in &twos {
        for b in &twos {
            if cat.compose(a[1], a[0]) == cat.compose(b[1], b[0]) {
                pullback.insert((a.clone(), b.clone()));
            }
        }
    }
    if images.len() != squares.len() || images != pullback {
        return Ok(Err(json!({ "squares": squares.len(), "pairs": pullback.len() })));
    }
    Ok(Ok(()))
}

/// Small strict symmetric monoidal categories with at most four objects.
pub fn small_monoidal() -> Vec<FinSymMonCat> {
    let z2 = [vec![0, 1], vec![1, 0]];
    vec![
        FinSymMonCat::truncated_sum(1),
        FinSymMonCat::truncated_sum(3),
        FinSymMonCat::max_chain(2),
        FinSymMonCat::discrete_monoid(&z2, 0).expect("ℤ/2"),
        FinSymMonCat::delooping(&z2).expect("ℤ/2"),
    ]
}

/// `𝒬_0` is a point, `𝒬_1` is the set of `n`-chains, and `𝒬_2` pairs two
/// chains with a square whose far side is their tensor product.
pub fn cq_closed_forms(q: &FinSymMonCat, n: usize) -> Result<std::result::Result<(), Value>> {
    let (_, l0) = build_cq(q, 1, 1, n, 0, 1 << 20)?;
    let chains = square_n(&q.category, &[0, n], GRID_LIMIT)?;
    let (x, l1) = build_cq(q, 1, 1, n, 1, 1 << 20)?;
    let edge = spine_simplex(1);
    let firsts: BTreeSet<usize> = (0..l1.len()).map(|e| l1.component(e, &edge)).collect();
    if l0.len() != 1 || l1.len() != chains.len() || firsts.len() != l1.len() {
        return Ok(Err(json!({ "n": n, "level0": l0.len(), "level1": l1.len(), "chains": chains.len() })));
    }
    let (_, l2) = build_cq(q, 1, 1, n, 2, 1 << 20)?;
    let mut found = BTreeSet::new();
    for e in 0..l2.len() {
        found.insert((x.decode(2, 0, l2.component(e, &spine_simplex(2))), x.decode(1, 1, xi(&l2, e)?)));
    }
    let squares = square_n(&q.category, &[1, n], GRID_LIMIT)?;
    let mut expected = BTreeSet::new();
    for a in &chains {
        for b in &chains {
            for s in &squares {
                let ok = (0..=n)
                    .all(|p| s.object_at(&[1, p]) == q.tensor_object(a.object_at(&[0, p]), b.object_at(&[0, p])))
                    && (0..n).all(|p| s.step(&[1, p], 1) == q.tensor_morphism(a.step(&[0, p], 1), b.step(&[0, p], 1)));
                if ok {
                    expected.insert((vec![a.clone(), b.clone()], vec![s.clone()]));
                }
            }
        }
    }
    if found.len() != l2.len() || found != expected {
        return Ok(Err(json!({ "n": n, "level2": l2.len(), "expected": expected.len() })));
    }
    Ok(Ok(()))
}

fn nerve(cfg: &SuiteConfig) -> Vec<PropertyResult> {
    let b = cfg.bound;
    vec![
        property("nerve", "hom_sizes_are_powers_of_two", |p| {
            for l in 0..=b.min(5) {
                let path = build_path(l)?;
                for i in 0..=l {
                    for j in i + 1..=l {
                        p.case(
                            path.hom_size(i, j) == 1 << (j - i - 1),
                            || json!({ "l": l, "i": i, "j": j, "size": path.hom_size(i, j) }),
                        );
                    }
                }
            }
            Ok(())
        }),
        property("nerve", "nondegenerate_only_below_the_diagonal", |p| {
            for l in 0..=b.min(4) {
                let path = build_path(l)?;
                for u in 0..=l + 2 {
                    for v in 0..=l + 2 - u {
                        if u + v > l {
                            let n = nondegenerate(&path, u, v).len();
                            p.case(n == 0, || json!({ "l": l, "u": u, "v": v, "count": n }));
                        }
                    }
                }
            }
            Ok(())
        }),
        property("nerve", "level_two_counts", |p| {
            let path = build_path(2)?;
            let count = |u, v| nondegenerate(&path, u, v).len();
            let got = [count(0, 0), count(1, 0), count(2, 0), count(1, 1), count(0, 1) + count(0, 2)];
            p.case(got == [3, 4, 1, 1, 0], || json!({ "counts": got }));
            Ok(())
        }),
        property("nerve", "labelled_limit_closed_forms", |p| {
            let mut r = rng(cfg.seed.wrapping_add(3));
            for _ in 0..25 {
                let objects = r.gen_range(1..=5);
                let c = random_free_category(&mut r, objects, 0.5, 14);
                let x = SquareNerve::new(c.category);
                let res = labelled_limit_closed_forms(&x)?;
                p.case(res.is_ok(), || json!({ "edges": c.edges, "detail": res.clone().err() }));
            }
            Ok(())
        }),
        property("nerve", "square_facts", |p| {
            let arrow = SquareNerve::new(FinCategory::walking_arrow());
            let n = arrow.size(1, 1)?;
            p.case(n == 6, || json!({ "walking_arrow_squares": n }));
            let mut r = rng(cfg.seed.wrapping_add(4));
            for _ in 0..10 {
                let objects = r.gen_range(1..=5);
                let c = random_free_category(&mut r, objects, 0.5, 14);
                let res = square_facts(&c.category)?;
                p.case(res.is_ok(), || json!({ "edges": c.edges, "detail": res.clone().err() }));
            }
            Ok(())
        }),
        property("nerve", "cq_closed_forms", |p| {
            for q in small_monoidal() {
                for n in 0..=1 {
                    let res = cq_closed_forms(&q, n)?;
                    p.case(res.is_ok(), || json!({ "size": q.size(), "detail": res.clone().err() }));
                }
            }
            Ok(())
        }),
    ]
}

fn spans(cfg: &SuiteConfig) -> Vec<PropertyResult> {
    let b = cfg.bound.min(3);
    vec![
        property("spans", "generic_replacement_matches_direct", |p| {
            let mut r = rng(cfg.seed.wrapping_add(5));
            for k in 0..=b {
                for l in 0..=b {
                    let shape = SpanShape::new(&[k], &[l]);
                    let (gen_cat, _) = shape.generating_inclusion();
                    for _ in 0..3 {
                        let g = random_poset_diagram(&mut r, &gen_cat, 1, 4);
                        for o in 0..shape.size() {
                            let generic: BTreeSet<Vec<usize>> =
                                replacement_on_top_cells(&shape, &g, o).into_iter().collect();
                            let direct: BTreeSet<Vec<usize>> = direct_replacement(&shape, &g, o).into_iter().collect();
                            p.case(generic == direct, || {
                                json!({ "sigma": k, "theta": l, "object": o, "sizes": g.sizes, "generic": generic.len(), "direct": direct.len() })
                            });
                        }
                    }
                }
            }
            Ok(())
        }),
        property("spans", "replacement_is_idempotent", |p| {
            let mut r = rng(cfg.seed.wrapping_add(6));
            let shape = Rc::new(SpanShape::new(&[2], &[1]));
            let (gen_cat, _) = shape.generating_inclusion();
            for _ in 0..6 {
                let g = random_poset_diagram(&mut r, &gen_cat, 1, 3);
                let d = crate::span::GeneralizedSpanDiagram::from_generating(shape.clone(), &[g])?;
                let once = d.cartesian_replacement().diagram;
                let twice = once.cartesian_replacement().diagram;
                p.case(
                    d.is_cartesian() && twice.slots[0].sizes == d.slots[0].sizes,
                    || json!({ "sizes": d.slots[0].sizes }),
                );
            }
            Ok(())
        }),
        property("spans", "unit_and_associativity_laws", |p| {
            let mut r = rng(cfg.seed.wrapping_add(7));
            for _ in 0..30 {
                let sizes: Vec<usize> = (0..4).map(|_| r.gen_range(1..=3)).collect();
                let mut spans: Vec<Span> = Vec::new();
                for w in sizes.windows(2) {
                    let n = r.gen_range(0..=4);
                    let s = Span::from_sizes(
                        w[0],
                        w[1],
                        random_function(&mut r, n, w[0]),
                        random_function(&mut r, n, w[1]),
                    )?;
                    let s = match spans.last() {
                        Some(prev) => Span { left: prev.right.clone(), ..s },
                        None => s,
                    };
                    spans.push(s);
                }
                let (s1, s2, s3) = (&spans[0], &spans[1], &spans[2]);
                let ru = right_unit_map(s1);
                let right = compose_spans(s1, &Span::identity(&s1.right))?;
                let lu = left_unit_map(s1);
                let left = compose_spans(&Span::identity(&s1.left), s1)?;
                let assoc = associator(s1, s2, s3)?;
                let lhs = compose_spans(&compose_spans(s1, s2)?, s3)?;
                let rhs = compose_spans(s1, &compose_spans(s2, s3)?)?;
                let ok = is_span_map(&right, s1, &ru)
                    && is_bijection(&ru, s1.apex.len())
                    && is_span_map(&left, s1, &lu)
                    && is_bijection(&lu, s1.apex.len())
                    && is_span_map(&lhs, &rhs, &assoc)
                    && is_bijection(&assoc, rhs.apex.len());
                p.case(ok, || json!({ "spans": spans.iter().map(Span::to_json).collect::<Vec<_>>() }));
            }
            Ok(())
        }),
    ]
}

pub fn matrix_product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect())
        .collect()
}

/// Two composable 2-morphisms over point feet with the given dimension tables.
pub fn composable_over_points(a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<(TwoMorphism, TwoMorphism)> {
    let first = TwoMorphism::over_points(a)?;
    let second = TwoMorphism::over_points(b)?;
    let rename = |s: &Span, prefix: &str| Span {
        apex: (0..s.apex.len()).map(|i| format!("{prefix}{i}")).collect(),
        ..s.clone()
    };
    let (l, m) = (rename(&first.l, "s0_"), rename(&first.m, "s1_"));
    let n = rename(&second.m, "s2_");
    Ok((TwoMorphism::new(l, m.clone(), first.payload)?, TwoMorphism::new(m, n, second.payload)?))
}

pub fn random_spine(
    r: &mut TestRng,
    level: usize,
    width: usize,
    height: usize,
    max_dim: usize,
) -> Result<(ThetaBase, Vec<Vec<EdgeSystem>>)> {
    let base = ThetaBase::new((0..=level).map(|_| r.gen_range(1..=2)).collect())?;
    let spine = (0..level)
        .map(|k| (0..width).map(|_| random_edge_system(r, base.face_size(&[k, k + 1]), height, max_dim)).collect())
        .collect();
    Ok((base, spine))
}

fn pushpull(cfg: &SuiteConfig) -> Vec<PropertyResult> {
    vec![
        property("pushpull", "vertical_composition_is_matrix_product", |p| {
            let mut r = rng(cfg.seed.wrapping_add(8));
            for _ in 0..200 {
                let (l, m, n) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=4));
                let a: Vec<Vec<usize>> = (0..l).map(|_| (0..m).map(|_| r.gen_range(0..=3)).collect()).collect();
                let bt: Vec<Vec<usize>> = (0..m).map(|_| (0..n).map(|_| r.gen_range(0..=3)).collect()).collect();
                let (x, y) = composable_over_points(&a, &bt)?;
                let got = compose2_vertical(&x, &y)?.dims_table();
                p.case(got == matrix_product(&a, &bt), || json!({ "a": a, "b": bt, "got": got }));
            }
            Ok(())
        }),
        property("pushpull", "unit_isomorphisms_compose_to_identity", |p| {
            let mut r = rng(cfg.seed.wrapping_add(9));
            for _ in 0..30 {
                let (x, y) = (r.gen_range(1..3), r.gen_range(1..3));
                let mk = |r: &mut TestRng, prefix: &str| -> Result<Span> {
                    let n = r.gen_range(1..5);
                    let s = Span::from_sizes(x, y, random_function(r, n, x), random_function(r, n, y))?;
                    Ok(Span { apex: (0..n).map(|i| format!("{prefix}{i}")).collect(), ..s })
                };
                let (l, m) = (mk(&mut r, "l")?, mk(&mut r, "m")?);
                let k = crate::pushpull::intersection(&l, &m)?.len();
                let mm = TwoMorphism::new(l.clone(), m.clone(), random_family(&mut r, k, 3))?;
                let right = vertical_right_unit_chain(&mm)?;
                let left = vertical_left_unit_chain(&mm)?;
                let (rc, lc) = (right.composite()?, left.composite()?);
                let rsrc = compose2_vertical(&mm, &TwoMorphism::identity(&m)?)?.payload;
                let lsrc = compose2_vertical(&TwoMorphism::identity(&l)?, &mm)?.payload;
                let ok = right.all_invertible()
                    && left.all_invertible()
                    && rc.is_identity()
                    && lc.is_identity()
                    && rc.source == rsrc
                    && lc.source == lsrc
                    && rc.target == mm.payload;
                p.case(ok, || json!({ "l": l.to_json(), "m": m.to_json(), "payload": mm.payload.dims }));
            }
            Ok(())
        }),
        property("pushpull", "pullback_pushforward_adjunction", |p| {
            let mut r = rng(cfg.seed.wrapping_add(10));
            for _ in 0..40 {
                let (dom, cod) = (r.gen_range(0..4), r.gen_range(1..4));
                let f = random_function(&mut r, dom, cod);
                let (v, w) = (random_family(&mut r, dom, 2), random_family(&mut r, cod, 2));
                let rep = check_adjunction(&f, &v, &w)?;
                p.case(rep.holds(), || json!({ "f": f, "v": v.dims, "w": w.dims }));
            }
            Ok(())
        }),
        property("pushpull", "fillings_over_a_spine_are_isomorphic", |p| {
            let mut r = rng(cfg.seed.wrapping_add(11));
            for level in 2..=3 {
                for _ in 0..6 {
                    let (width, height) = (r.gen_range(1..=2), r.gen_range(0..=1));
                    let (base, spine) = random_spine(&mut r, level, width, height, 2)?;
                    let canonical = synthesize_filling(&base, &spine)?;
                    let psi = random_edge_isos(&mut r, &canonical);
                    let other = transport(&canonical, &psi)?;
                    let ok = is_pushpull(&canonical)?
                        && is_pushpull(&other)?
                        && match find_iso(&canonical, &other)? {
                            IsoSearch::Found(found) => is_diagram_iso(&canonical, &other, &found)?,
                            _ => false,
                        };
                    p.case(ok, || json!({ "level": level, "sizes": base.sizes, "width": width, "height": height }));
                }
            }
            Ok(())
        }),
        property("pushpull", "point_filling_multiplies_dimensions", |p| {
            let mut r = rng(cfg.seed.wrapping_add(12));
            for _ in 0..20 {
                let (a, b, c) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
                let x: Vec<Vec<usize>> = (0..a).map(|_| (0..b).map(|_| r.gen_range(0..=2)).collect()).collect();
                let y: Vec<Vec<usize>> = (0..b).map(|_| (0..c).map(|_| r.gen_range(0..=2)).collect()).collect();
                let base = ThetaBase::new(vec![a, b, c])?;
                let spine = vec![
                    vec![EdgeSystem::single(VectorFamily::new(x.concat()))],
                    vec![EdgeSystem::single(VectorFamily::new(y.concat()))],
                ];
                let d = synthesize_filling(&base, &spine)?;
                let got = d.edges[&(0, 2)][0].chain[0].dims.clone();
                p.case(got == matrix_product(&x, &y).concat(), || json!({ "a": x, "b": y, "got": got }));
            }
            Ok(())
        }),
    ]
}

/// `dim (K[x,y]/(f_1, ..., f_k))_w` from the span of the multiples `f_i m`.
pub fn quotient_dim(ring: &GradedRing, fs: &[Poly], w: u64) -> usize {
    let monos = ring.basis(w, Parity::Even);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for f in fs {
        let Some((d, _)) = ring.homogeneous_degree(f) else { continue };
        if d > w {
            continue;
        }
        for m in ring.basis(w - d, Parity::Even) {
            let prod = ring.mul(f, &Poly::term(m, q(1)));
            rows.push(monos.iter().map(|k| prod.coefficient(k)).collect());
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    monos.len() - Matrix::from_rows(rows).expect("rectangular").rank()
}

fn crit_locus(n: u32) -> Result<GradedDGAlgebra> {
    let amb = GradedRing::new(vec![Generator::even("x", 1), Generator::even("y", n)], vec![])?;
    let graph = amb.parse(&format!("y - x^{n}"))?;
    let zero = amb.parse("y")?;
    koszul_intersection(&amb, &[graph], &[zero])
}

fn crw(cfg: &SuiteConfig) -> Result<Vec<PropertyResult>> {
    let ns: Vec<u32> = match cfg.n {
        Some(n) if n >= 2 => vec![n],
        Some(n) => return Err(Error::BoundExceeded(format!("need n >= 2, got {n}"))),
        None => (2..=5).collect(),
    };
    Ok(vec![
        property("crw", "critical_locus_cohomology", |p| {
            for &n in &ns {
                let a = crit_locus(n)?;
                let h = a.cohomology(n as u64 + 2);
                let even: Vec<usize> = (0..=n as u64 + 2).map(|w| usize::from(w < n as u64)).collect();
                p.case(h.even() == even && h.odd().iter().all(|&d| d == 0), || json!({ "n": n, "table": h.rows }));
            }
            Ok(())
        }),
        property("crw", "d_squared_zero", |p| {
            for &n in &ns {
                let (_, b, report) = build_intro_algebras(n)?;
                p.case(
                    report.a_d_squared_zero && report.b_d_squared_zero && b.d_squared_zero(),
                    || json!({ "n": n, "report": report }),
                );
            }
            Ok(())
        }),
        property("crw", "regular_sequences", |p| {
            let ring = GradedRing::new(vec![Generator::even("x", 1), Generator::even("y", 1)], vec![])?;
            let mut r = rng(cfg.seed.wrapping_add(13));
            let mut done = 0;
            while done < 20 {
                let k = r.gen_range(1..=2);
                let fs: Vec<Poly> = (0..k)
                    .map(|_| {
                        let d = r.gen_range(1..=3u32);
                        let mut f = Poly::zero();
                        for i in 0..=d {
                            f.add_term(vec![i, d - i], q(r.gen_range(-2..=2)));
                        }
                        f
                    })
                    .collect();
                if fs.iter().any(Poly::is_zero) {
                    continue;
                }
                let degs: Vec<u64> = fs.iter().map(|f| ring.homogeneous_degree(f).expect("homogeneous").0).collect();
                let bound = degs.iter().sum::<u64>() + 1;
                let dims: Vec<usize> = (0..=bound).map(|w| quotient_dim(&ring, &fs, w)).collect();
                if k == 2 && dims.iter().sum::<usize>() as u64 != degs[0] * degs[1] {
                    continue;
                }
                let a = koszul_intersection(&ring, &[], &fs)?;
                let h = a.cohomology(bound);
                p.case(h.even() == dims && h.odd().iter().all(|&d| d == 0), || {
                    json!({ "equations": fs.iter().map(|f| ring.format(f)).collect::<Vec<_>>(), "table": h.rows, "quotient": dims })
                });
                done += 1;
            }
            Ok(())
        }),
        property("crw", "extension_restriction_adjunction", |p| {
            let r = GradedDGAlgebra::formal(GradedRing::new(vec![Generator::even("x", 1)], vec![])?);
            for &n in &ns {
                let (_, b, _) = build_intro_algebras(n)?;
                let phi = AlgebraMap::new(r.clone(), b.clone(), vec![b.ring.generator(0)])?;
                for k in 1..=2u32 {
                    let mut xk = vec![0];
                    xk[0] = k;
                    let m = DGModule::new(
                        r.clone(),
                        vec![
                            ModuleGenerator { parity: Parity::Even, weight: 0 },
                            ModuleGenerator { parity: Parity::Odd, weight: k },
                        ],
                        vec![vec![Poly::zero(), Poly::term(xk, q(1))], vec![Poly::zero(), Poly::zero()]],
                    )?;
                    let dims = adjunction_dims(&phi, &m, &DGModule::free_rank_one(b.clone()), n as u64 + 1)?;
                    p.case(dims.holds(), || json!({ "n": n, "k": k, "graded": dims.graded, "chain": dims.chain }));
                }
            }
            Ok(())
        }),
        property("crw", "unit_equation_is_contractible", |p| {
            let amb = GradedRing::new(vec![Generator::even("x", 1)], vec![])?;
            let a = koszul_intersection(&amb, &[], &[amb.one()])?;
            let h = a.cohomology(4);
            p.case(h.rows.iter().all(|&(_, e, o)| e == 0 && o == 0), || json!({ "table": h.rows }));
            Ok(())
        }),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let results = run_suite("all", &SuiteConfig::default()).unwrap();
        let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(results.iter().all(|r| r.cases > 0));
    }

    #[test]
    fn bad_names_and_bounds() {
        assert!(matches!(run_suite("lattices", &SuiteConfig::default()), Err(Error::Parse(_))));
        let cfg = SuiteConfig { bound: 9, ..SuiteConfig::default() };
        assert!(matches!(run_suite("nerve", &cfg), Err(Error::BoundExceeded(_))));
    }
}
