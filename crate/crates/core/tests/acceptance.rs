use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use spancalc::crw::{build_intro_algebras, koszul_intersection, Generator, GradedRing};
use spancalc::fincat::{nat_bruteforce, nat_from_end, right_kan, right_kan_end, FinCategory};
use spancalc::nerve::{
    build_cq, build_path, labelled_limit, nerve_chains, nondegenerate, spine_simplex, square_n, xi, xi_simplex,
    Bisimplicial, FinSymMonCat, Grid, SquareNerve, GRID_LIMIT,
};
use spancalc::pushpull::{
    compose2_vertical, find_iso, horizontal_unit_chain, intersection, is_diagram_iso, is_pushpull, synthesize_filling,
    transport, vertical_left_unit_chain, vertical_right_unit_chain, EdgeSystem, IsoSearch, ThetaBase, TwoMorphism,
};
use spancalc::random::{
    random_edge_isos, random_edge_system, random_family, random_free_category, random_function, random_poset_diagram,
    rng, TestRng,
};
use spancalc::simplex::{build_sigma, build_theta};
use spancalc::span::{direct_replacement, replacement_on_top_cells, Span, SpanShape};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c1() -> Outcome {
    let sigma = build_sigma(3);
    let intervals: BTreeSet<(usize, usize)> = sigma.objects.iter().map(|f| (f.apply(0), f.apply(f.source()))).collect();
    let mut expected = BTreeSet::new();
    for i in 0..=3 {
        for j in i..=3 {
            expected.insert((i, j));
        }
    }
    ensure!(intervals == expected && sigma.objects.len() == 10, "Σ^3 has {} objects", sigma.objects.len());
    let lambda: Vec<(usize, usize)> = sigma
        .objects
        .iter()
        .zip(&sigma.lambda)
        .filter(|(_, &f)| f)
        .map(|(f, _)| (f.apply(0), f.apply(f.source())))
        .collect();
    ensure!(lambda.len() == 7 && lambda.iter().all(|&(i, j)| j - i <= 1), "Λ^3 = {lambda:?}");
    let theta = build_theta(2);
    let subsets: BTreeSet<Vec<usize>> = theta.objects.iter().cloned().collect();
    let all: BTreeSet<Vec<usize>> = (1u32..8).map(|m| (0..3).filter(|b| m >> b & 1 == 1).collect()).collect();
    ensure!(subsets == all && theta.objects.len() == 7, "Θ^2 has {} objects", theta.objects.len());
    let xi: Vec<&Vec<usize>> = theta.objects.iter().zip(&theta.xi).filter(|(_, &f)| f).map(|(s, _)| s).collect();
    ensure!(xi.len() == 3 && xi.iter().all(|s| s.len() == 1), "Ξ^2 = {xi:?}");
    Ok("|Σ^3| = 10, |Λ^3| = 7, |Θ^2| = 7, |Ξ^2| = 3".into())
}

/// Morphisms `i -> j` of the path category are the subsets of the interior
/// vertices that a path skips.
fn c2() -> Outcome {
    let mut checked = 0;
    for l in 0..=5 {
        let p = build_path(l).map_err(|e| e.to_string())?;
        for i in 0..=l {
            for j in i + 1..=l {
                let interior = j - i - 1;
                let subsets = (0u32..1 << interior).count();
                ensure!(p.hom_size(i, j) == subsets, "l={l} hom({i},{j}) = {}", p.hom_size(i, j));
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} hom sets"))
}

fn c3() -> Outcome {
    for l in 0..=4 {
        let p = build_path(l).map_err(|e| e.to_string())?;
        for u in 0..=l + 2 {
            for v in 0..=l + 2 - u {
                if u + v > l {
                    let n = nondegenerate(&p, u, v).len();
                    ensure!(n == 0, "l={l} ({u},{v}) has {n}");
                }
            }
        }
    }
    let p = build_path(2).map_err(|e| e.to_string())?;
    let n = |u, v| nondegenerate(&p, u, v).len();
    let got = [n(0, 0), n(1, 0), n(2, 0), n(1, 1), n(0, 1) + n(0, 2)];
    ensure!(got == [3, 4, 1, 1, 0], "level two counts {got:?}");
    Ok("vanishing above the diagonal for l <= 4, level two (3,4,1,1,0)".into())
}

fn c4() -> Outcome {
    let mut r = rng(404);
    for case in 0..25 {
        let objects = r.gen_range(1..=5);
        let c = random_free_category(&mut r, objects, 0.5, 14);
        let x = SquareNerve::new(c.category);
        let err = |e: spancalc::Error| e.to_string();
        let l0 = labelled_limit(&x, 0).map_err(err)?;
        ensure!(l0.len() == x.size(0, 0).map_err(err)?, "case {case}: level 0");
        let l1 = labelled_limit(&x, 1).map_err(err)?;
        let edge = spine_simplex(1);
        let arrows: BTreeSet<usize> = (0..l1.len()).map(|e| l1.component(e, &edge)).collect();
        ensure!(arrows.len() == l1.len() && l1.len() == x.size(1, 0).map_err(err)?, "case {case}: level 1");
        let l2 = labelled_limit(&x, 2).map_err(err)?;
        let (spine, tau) = (spine_simplex(2), xi_simplex(2).map_err(err)?);
        let found: BTreeSet<(usize, usize)> =
            (0..l2.len()).map(|e| (l2.component(e, &spine), l2.component(e, &tau))).collect();
        let cat = &x.category;
        let squares = x.cells(1, 1).map_err(err)?;
        let chains = x.cells(2, 0).map_err(err)?;
        let mut expected = BTreeSet::new();
        for (i, ch) in chains.grids.iter().enumerate() {
            let composite = cat.compose(ch.step(&[1, 0], 0), ch.step(&[0, 0], 0)).ok_or("not composable")?;
            for (j, s) in squares.grids.iter().enumerate() {
                let same_ends =
                    s.object_at(&[0, 0]) == ch.object_at(&[0, 0]) && s.object_at(&[1, 0]) == ch.object_at(&[2, 0]);
                if same_ends && s.step(&[0, 1], 0) == composite {
                    expected.insert((i, j));
                }
            }
        }
        ensure!(
            found.len() == l2.len() && found == expected,
            "case {case}: level 2 has {} vs {}",
            l2.len(),
            expected.len()
        );
    }
    Ok("25 random categories".into())
}

/// Monotone maps from the square poset `[1] x [1]` to `[1]`.
fn walking_arrow_squares() -> usize {
    (0u32..16)
        .filter(|m| {
            let f = |a: u32, b: u32| m >> (2 * a + b) & 1;
            f(0, 0) <= f(0, 1) && f(0, 0) <= f(1, 0) && f(0, 1) <= f(1, 1) && f(1, 0) <= f(1, 1)
        })
        .count()
}

fn c5() -> Outcome {
    let arrow = SquareNerve::new(FinCategory::walking_arrow());
    let n = arrow.size(1, 1).map_err(|e| e.to_string())?;
    ensure!(n == 6 && n == walking_arrow_squares(), "walking arrow has {n} squares");
    let mut r = rng(505);
    for case in 0..10 {
        let objects = r.gen_range(1..=5);
        let cat = random_free_category(&mut r, objects, 0.5, 14).category;
        for k in 0..=3 {
            let chains: BTreeSet<Vec<usize>> = nerve_chains(&cat, k).into_iter().collect();
            let grids = square_n(&cat, &[k, 0], GRID_LIMIT).map_err(|e| e.to_string())?;
            let rows: BTreeSet<Vec<usize>> = grids
                .iter()
                .map(|g| {
                    if k == 0 {
                        vec![cat.identity(g.objects[0])]
                    } else {
                        (0..k).map(|i| g.step(&[i, 0], 0)).collect()
                    }
                })
                .collect();
            ensure!(rows.len() == grids.len() && rows == chains, "case {case}: k = {k}");
        }
        let squares = square_n(&cat, &[1, 1], GRID_LIMIT).map_err(|e| e.to_string())?;
        let images: BTreeSet<(Vec<usize>, Vec<usize>)> = squares
            .iter()
            .map(|s| (vec![s.step(&[0, 0], 0), s.step(&[1, 0], 1)], vec![s.step(&[0, 0], 1), s.step(&[0, 1], 0)]))
            .collect();
        let twos = nerve_chains(&cat, 2);
        let mut pairs = BTreeSet::new();
        for a in &twos {
            for b in &twos {
                if cat.compose(a[1], a[0]) == cat.compose(b[1], b[0]) {
                    pairs.insert((a.clone(), b.clone()));
                }
            }
        }
        ensure!(images.len() == squares.len() && images == pairs, "case {case}: squares");
    }
    Ok("|□²_{1,1}(walking arrow)| = 6, rows and squares on 10 categories".into())
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut r = rng(606);
    let mut instances = 0;
    for k in 0..=3 {
        for l in 0..=3 {
            let shape = SpanShape::new(&[k], &[l]);
            let (gen_cat, _) = shape.generating_inclusion();
            for _ in 0..3 {
                let g = random_poset_diagram(&mut r, &gen_cat, 1, 4);
                for o in 0..shape.size() {
                    let generic: BTreeSet<Vec<usize>> = replacement_on_top_cells(&shape, &g, o).into_iter().collect();
                    let direct: BTreeSet<Vec<usize>> = direct_replacement(&shape, &g, o).into_iter().collect();
                    ensure!(generic == direct, "Σ^{k} x Θ^{l} at object {o}: {} vs {}", generic.len(), direct.len());
                }
                instances += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{instances} diagrams in {:.2}s", elapsed.as_secs_f64()))
}

fn matrix_product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; b[0].len()]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            for (j, &y) in b[k].iter().enumerate() {
                out[i][j] += x * y;
            }
        }
    }
    out
}

fn rename(s: &Span, prefix: &str) -> Span {
    Span { apex: (0..s.apex.len()).map(|i| format!("{prefix}{i}")).collect(), ..s.clone() }
}

fn random_span(r: &mut TestRng, left: usize, right: usize, prefix: &str) -> Result<Span, String> {
    let n = r.gen_range(1..5);
    let s = Span::from_sizes(left, right, random_function(r, n, left), random_function(r, n, right))
        .map_err(|e| e.to_string())?;
    Ok(rename(&s, prefix))
}

fn c7() -> Outcome {
    let err = |e: spancalc::Error| e.to_string();
    let mut r = rng(707);
    for case in 0..200 {
        let (l, m, n) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=4));
        let a: Vec<Vec<usize>> = (0..l).map(|_| (0..m).map(|_| r.gen_range(0..=3)).collect()).collect();
        let b: Vec<Vec<usize>> = (0..m).map(|_| (0..n).map(|_| r.gen_range(0..=3)).collect()).collect();
        let first = TwoMorphism::over_points(&a).map_err(err)?;
        let second = TwoMorphism::over_points(&b).map_err(err)?;
        let mid = rename(&first.m, "s1_");
        let x = TwoMorphism::new(rename(&first.l, "s0_"), mid.clone(), first.payload).map_err(err)?;
        let y = TwoMorphism::new(mid, rename(&second.m, "s2_"), second.payload).map_err(err)?;
        let got = compose2_vertical(&x, &y).map_err(err)?.dims_table();
        ensure!(got == matrix_product(&a, &b), "case {case}: {a:?} * {b:?} gave {got:?}");
    }
    for case in 0..30 {
        let (x, y) = (r.gen_range(1..3), r.gen_range(1..3));
        let (l, m) = (random_span(&mut r, x, y, "l")?, random_span(&mut r, x, y, "m")?);
        let k = intersection(&l, &m).map_err(err)?.len();
        let mm = TwoMorphism::new(l.clone(), m.clone(), random_family(&mut r, k, 3)).map_err(err)?;
        let right = vertical_right_unit_chain(&mm).map_err(err)?;
        let rc = right.composite().map_err(err)?;
        let rsrc = compose2_vertical(&mm, &TwoMorphism::identity(&m).map_err(err)?).map_err(err)?.payload;
        ensure!(
            right.all_invertible() && rc.is_identity() && rc.source == rsrc && rc.target == mm.payload,
            "case {case}: right unit"
        );
        let left = vertical_left_unit_chain(&mm).map_err(err)?;
        let lc = left.composite().map_err(err)?;
        let lsrc = compose2_vertical(&TwoMorphism::identity(&l).map_err(err)?, &mm).map_err(err)?.payload;
        ensure!(left.all_invertible() && lc.is_identity() && lc.source == lsrc, "case {case}: left unit");
        for side in [false, true] {
            let (chain, _) = horizontal_unit_chain(&mm, side).map_err(err)?;
            ensure!(chain.composite().map_err(err)?.is_identity(), "case {case}: horizontal unit");
        }
    }
    Ok("200 products, 30 unit chains".into())
}

fn c8() -> Outcome {
    let err = |e: spancalc::Error| e.to_string();
    let mut r = rng(808);
    let mut checked = 0;
    for level in 2..=3 {
        for case in 0..8 {
            let (width, height) = (r.gen_range(1..=2), r.gen_range(0..=1));
            let base = ThetaBase::new((0..=level).map(|_| r.gen_range(1..=2)).collect()).map_err(err)?;
            let spine: Vec<Vec<EdgeSystem>> = (0..level)
                .map(|k| {
                    (0..width).map(|_| random_edge_system(&mut r, base.face_size(&[k, k + 1]), height, 2)).collect()
                })
                .collect();
            let canonical = synthesize_filling(&base, &spine).map_err(err)?;
            let psi = random_edge_isos(&mut r, &canonical);
            let other = transport(&canonical, &psi).map_err(err)?;
            ensure!(
                is_pushpull(&canonical).map_err(err)? && is_pushpull(&other).map_err(err)?,
                "level {level} case {case}: not push-pull"
            );
            match find_iso(&canonical, &other).map_err(err)? {
                IsoSearch::Found(found) => {
                    ensure!(
                        is_diagram_iso(&canonical, &other, &found).map_err(err)?,
                        "level {level} case {case}: bad iso"
                    )
                }
                verdict => return Err(format!("level {level} case {case}: {verdict:?}")),
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs of fillings"))
}

fn small_monoidal() -> Vec<FinSymMonCat> {
    let z2 = [vec![0, 1], vec![1, 0]];
    vec![
        FinSymMonCat::truncated_sum(1),
        FinSymMonCat::truncated_sum(3),
        FinSymMonCat::max_chain(2),
        FinSymMonCat::max_chain(3),
        FinSymMonCat::discrete_monoid(&z2, 0).unwrap(),
        FinSymMonCat::delooping(&z2).unwrap(),
    ]
}

fn c9() -> Outcome {
    let err = |e: spancalc::Error| e.to_string();
    let mut checked = 0;
    for q in small_monoidal() {
        ensure!(q.size() <= 4, "too large");
        for n in 0..=1 {
            let (_, l0) = build_cq(&q, 1, 1, n, 0, 1 << 20).map_err(err)?;
            ensure!(l0.len() == 1, "{n}: level 0 has {}", l0.len());
            let chains: Vec<Grid> = square_n(&q.category, &[0, n], GRID_LIMIT).map_err(err)?;
            let (x, l1) = build_cq(&q, 1, 1, n, 1, 1 << 20).map_err(err)?;
            let firsts: BTreeSet<usize> = (0..l1.len()).map(|e| l1.component(e, &spine_simplex(1))).collect();
            ensure!(l1.len() == chains.len() && firsts.len() == l1.len(), "{n}: level 1 has {}", l1.len());
            let (_, l2) = build_cq(&q, 1, 1, n, 2, 1 << 20).map_err(err)?;
            let mut found = BTreeSet::new();
            for e in 0..l2.len() {
                found.insert((
                    x.decode(2, 0, l2.component(e, &spine_simplex(2))),
                    x.decode(1, 1, xi(&l2, e).map_err(err)?),
                ));
            }
            let mut expected = BTreeSet::new();
            for a in &chains {
                for b in &chains {
                    for s in square_n(&q.category, &[1, n], GRID_LIMIT).map_err(err)? {
                        let objects = (0..=n).all(|p| {
                            s.object_at(&[1, p]) == q.tensor_object(a.object_at(&[0, p]), b.object_at(&[0, p]))
                        });
                        let arrows = (0..n)
                            .all(|p| s.step(&[1, p], 1) == q.tensor_morphism(a.step(&[0, p], 1), b.step(&[0, p], 1)));
                        if objects && arrows {
                            expected.insert((vec![a.clone(), b.clone()], vec![s]));
                        }
                    }
                }
            }
            ensure!(
                found.len() == l2.len() && found == expected,
                "{n}: level 2 has {} vs {}",
                l2.len(),
                expected.len()
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (category, n) pairs"))
}

fn c10() -> Outcome {
    let err = |e: spancalc::Error| e.to_string();
    for n in 1..=5u32 {
        let amb = GradedRing::new(vec![Generator::even("x", 1), Generator::even("y", n)], vec![]).map_err(err)?;
        let graph = amb.parse(&format!("y - x^{n}")).map_err(err)?;
        let zero = amb.parse("y").map_err(err)?;
        let a = koszul_intersection(&amb, &[graph], &[zero]).map_err(err)?;
        let bound = n as u64 + 3;
        let h = a.cohomology(bound);
        let truncated: Vec<usize> = (0..=bound).map(|w| usize::from(w < n as u64)).collect();
        ensure!(h.even() == truncated && h.odd().iter().all(|&d| d == 0), "n={n}: {:?}", h.rows);
        if n >= 2 {
            let (_, b, report) = build_intro_algebras(n).map_err(err)?;
            ensure!(report.a_d_squared_zero && b.d_squared_zero(), "n={n}: d² != 0");
        }
    }
    Ok("H = K[x]/(x^n) for n <= 5, d² = 0 on A and B".into())
}

fn c11() -> Outcome {
    let err = |e: spancalc::Error| e.to_string();
    let mut r = rng(1111);
    let (mut instances, mut attempts) = (0, 0);
    while instances < 100 {
        attempts += 1;
        ensure!(attempts < 10_000, "only {instances} functors found");
        let (na, nb) = (r.gen_range(1..=3), r.gen_range(1..=4));
        let a = random_free_category(&mut r, na, 0.5, 8);
        let b = random_free_category(&mut r, nb, 0.6, 12);
        let Some(f) = a.random_functor(&mut r, &b.category) else { continue };
        let g = a.random_diagram(&mut r, 0, 3);
        for obj in 0..nb {
            let (_, lim) = right_kan(&a.category, &b.category, &f, &g, obj);
            let mut apex = lim.apex.clone();
            apex.sort();
            ensure!(
                apex == right_kan_end(&a.category, &b.category, &f, &g, obj).map_err(err)?,
                "instance {instances} at {obj}"
            );
        }
        instances += 1;
    }
    for case in 0..100 {
        let n = r.gen_range(1..=3);
        let c = random_free_category(&mut r, n, 0.5, 8);
        let (f, g) = (c.random_diagram(&mut r, 0, 2), c.random_diagram(&mut r, 0, 3));
        ensure!(nat_from_end(&f, &g).map_err(err)? == nat_bruteforce(&f, &g), "hom end case {case}");
    }
    Ok(format!("100 Kan extensions ({attempts} draws), 100 hom ends"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("index poset sizes", c1),
        ("path category hom sizes", c2),
        ("nondegenerate bisimplices", c3),
        ("labelled limits of square nerves", c4),
        ("square nerve facts", c5),
        ("right Kan replacement", c6),
        ("vertical composition and units", c7),
        ("push-pull fillings", c8),
        ("monoidal labelled limits", c9),
        ("critical locus cohomology", c10),
        ("Kan extensions and ends", c11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
