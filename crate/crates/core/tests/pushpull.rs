use proptest::prelude::*;
use rand::Rng;

use spancalc::linalg::Matrix;
use spancalc::pushpull::*;
use spancalc::random::{
    random_edge_isos, random_edge_system, random_family, random_family_map, random_function, rng, TestRng,
};
use spancalc::span::Span;
use spancalc::Error;

fn fam(d: &[usize]) -> VectorFamily {
    VectorFamily::new(d.to_vec())
}

fn foot(name: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{name}{i}")).collect()
}

/// Feet are named after their sizes so spans over equal sizes compose.
fn random_span(r: &mut TestRng, left: usize, right: usize, apex: usize) -> Span {
    let lm = random_function(r, apex, left);
    let rm = random_function(r, apex, right);
    let apex = foot("a", apex);
    Span::new(foot(&format!("f{left}_"), left), foot(&format!("f{right}_"), right), apex, lm, rm).unwrap()
}

fn rename(s: &Span, prefix: &str) -> Span {
    Span { apex: (0..s.apex.len()).map(|i| format!("{prefix}{i}")).collect(), ..s.clone() }
}

#[test]
fn pullback_and_pushforward_examples() {
    let v = fam(&[3]);
    assert_eq!(pullback_ls(&[0, 0], &v).unwrap().dims, vec![3, 3]);
    assert_eq!(pushforward_ls(&[0, 0], 1, &fam(&[2, 3])).unwrap().dims, vec![5]);
    assert_eq!(pushforward_ls(&[0], 2, &fam(&[4])).unwrap().dims, vec![4, 0]);
    let mut r = rng(1);
    for _ in 0..20 {
        let f = random_function(&mut r, 4, 3);
        let g = random_function(&mut r, 3, 5);
        let w = random_family(&mut r, 5, 3);
        let gf: Vec<usize> = f.iter().map(|&y| g[y]).collect();
        assert_eq!(pullback_ls(&gf, &w).unwrap(), pullback_ls(&f, &pullback_ls(&g, &w).unwrap()).unwrap());
        let v = random_family(&mut r, 4, 3);
        assert_eq!(
            pushforward_ls(&gf, 5, &v).unwrap(),
            pushforward_ls(&g, 5, &pushforward_ls(&f, 3, &v).unwrap()).unwrap()
        );
    }
}

#[test]
fn adjunction_examples() {
    let rep = check_adjunction(&[0, 0], &fam(&[2, 3]), &fam(&[4])).unwrap();
    assert_eq!((rep.left_dim, rep.right_dim), (20, 20));
    assert!(rep.holds());
    let rep = check_adjunction(&[0, 1, 1], &fam(&[0, 0, 0]), &fam(&[2, 1])).unwrap();
    assert_eq!((rep.left_dim, rep.right_dim), (0, 0));
    assert!(rep.holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn adjunction_holds_on_random_maps(seed in 0u64..10_000, dom in 0usize..4, cod in 1usize..4) {
        let mut r = rng(seed);
        let f = random_function(&mut r, dom, cod);
        let v = random_family(&mut r, dom, 2);
        let w = random_family(&mut r, cod, 2);
        let rep = check_adjunction(&f, &v, &w).unwrap();
        prop_assert!(rep.holds(), "{rep:?}");
        // Adjunct of a random map and back.
        let phi = random_family_map(&mut r, &pullback_ls(&f, &w).unwrap(), &v);
        prop_assert_eq!(adjunct_left(&f, &v, &adjunct_right(&f, &w, &phi).unwrap()).unwrap(), phi);
    }

    #[test]
    fn base_change_is_natural(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let (nx, ny, nz) = (r.gen_range(1..4), r.gen_range(1..3), r.gen_range(1..4));
        let g = random_function(&mut r, nx, ny);
        let f = random_function(&mut r, nz, ny);
        let sq = PullbackSquare::canonical(f.clone(), g.clone(), ny).unwrap();
        let v = random_family(&mut r, nx, 2);
        let v2 = random_family(&mut r, nx, 2);
        let theta = random_family_map(&mut r, &v, &v2);
        let bc = base_change(&sq, &v).unwrap();
        let bc2 = base_change(&sq, &v2).unwrap();
        prop_assert!(bc.is_invertible());
        let lhs = compose(&bc2, &pullback_map(&f, &pushforward_map(&g, ny, &theta).unwrap()).unwrap()).unwrap();
        let rhs = compose(&pushforward_map(&sq.g_prime, nz, &pullback_map(&sq.f_prime, &theta).unwrap()).unwrap(), &bc).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_natural(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let (nx, ny) = (r.gen_range(0..4), r.gen_range(1..3));
        let f = random_function(&mut r, nx, ny);
        let a = random_family(&mut r, nx, 2);
        let a2 = random_family(&mut r, nx, 2);
        let b = random_family(&mut r, ny, 2);
        let alpha = random_family_map(&mut r, &a, &a2);
        let p = projection_iso(&f, &a, &b).unwrap();
        let p2 = projection_iso(&f, &a2, &b).unwrap();
        prop_assert!(p.is_invertible());
        let idb = FamilyMap::identity(&b);
        let lhs = compose(&p2, &tensor_map(&pushforward_map(&f, ny, &alpha).unwrap(), &idb).unwrap()).unwrap();
        let pulled = FamilyMap::identity(&pullback_ls(&f, &b).unwrap());
        let rhs = compose(&pushforward_map(&f, ny, &tensor_map(&alpha, &pulled).unwrap()).unwrap(), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn base_change_examples() {
    let id = PullbackSquare::new(vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1], 2).unwrap();
    assert!(base_change(&id, &fam(&[2, 1])).unwrap().is_identity());
    // Fold map pulled back along itself.
    let sq = PullbackSquare::canonical(vec![0, 0], vec![0, 0], 1).unwrap();
    let bc = base_change(&sq, &fam(&[1, 2])).unwrap();
    assert_eq!(bc.source.dims, vec![3, 3]);
    assert_eq!(bc.target.dims, vec![3, 3]);
    assert!(bc.is_invertible());
    // Dropping a point of the fibre product is detected.
    let bad = PullbackSquare::new(vec![0, 0], vec![0, 0], vec![0, 1, 0], vec![0, 0, 1], 1);
    assert!(matches!(bad, Err(Error::NotAPullback(_))));
}

#[test]
fn projection_examples() {
    let p = projection_iso(&[0, 0], &fam(&[1, 2]), &fam(&[3])).unwrap();
    assert_eq!(p.source.dims, vec![9]);
    assert_eq!(p.target.dims, vec![9]);
    let p = projection_iso(&[0, 1, 1], &fam(&[2, 1, 3]), &VectorFamily::unit(2)).unwrap();
    assert!(p.is_identity());
}

fn matrix_product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect())
        .collect()
}

fn random_table(r: &mut TestRng, rows: usize, cols: usize, max: usize) -> Vec<Vec<usize>> {
    (0..rows).map(|_| (0..cols).map(|_| r.gen_range(0..=max)).collect()).collect()
}

/// Direct sum over middle points, summand by summand.
fn brute_force_vertical(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
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

fn chain_over_points(tables: &[Vec<Vec<usize>>]) -> Vec<TwoMorphism> {
    let mut out: Vec<TwoMorphism> = Vec::new();
    for (k, t) in tables.iter().enumerate() {
        let m = TwoMorphism::over_points(t).unwrap();
        let l = match out.last() {
            Some(prev) => prev.m.clone(),
            None => rename(&m.l, "s0_"),
        };
        let right = rename(&m.m, &format!("s{}_", k + 1));
        out.push(TwoMorphism::new(l, right, m.payload).unwrap());
    }
    out
}

#[test]
fn vertical_composition_over_points_is_matrix_multiplication() {
    let ms = chain_over_points(&[vec![vec![2], vec![3]], vec![vec![1, 4]]]);
    assert_eq!(compose2_vertical(&ms[0], &ms[1]).unwrap().dims_table(), vec![vec![2, 8], vec![3, 12]]);
    let mut r = rng(7);
    for _ in 0..200 {
        let (l, m, n) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=4));
        let a = random_table(&mut r, l, m, 3);
        let b = random_table(&mut r, m, n, 3);
        let ms = chain_over_points(&[a.clone(), b.clone()]);
        let got = compose2_vertical(&ms[0], &ms[1]).unwrap().dims_table();
        assert_eq!(got, matrix_product(&a, &b));
        assert_eq!(got, brute_force_vertical(&a, &b));
    }
    let z = chain_over_points(&[vec![vec![0, 0]], vec![vec![2], vec![3]]]);
    assert_eq!(compose2_vertical(&z[0], &z[1]).unwrap().dims_table(), vec![vec![0]]);
}

fn random_two_morphism(r: &mut TestRng, l: &Span, m: &Span) -> TwoMorphism {
    let n = intersection(l, m).unwrap().len();
    TwoMorphism::new(l.clone(), m.clone(), random_family(r, n, 3)).unwrap()
}

#[test]
fn vertical_unit_chains_compose_to_the_identity() {
    let mut r = rng(11);
    for _ in 0..30 {
        let (x, y) = (r.gen_range(1..3), r.gen_range(1..3));
        let l = rename(
            &{
                let n = r.gen_range(1..5);
                random_span(&mut r, x, y, n)
            },
            "l",
        );
        let m = rename(
            &{
                let n = r.gen_range(1..5);
                random_span(&mut r, x, y, n)
            },
            "m",
        );
        let mm = random_two_morphism(&mut r, &l, &m);
        let right = vertical_right_unit_chain(&mm).unwrap();
        let composite = compose2_vertical(&mm, &TwoMorphism::identity(&m).unwrap()).unwrap();
        assert!(right.all_invertible());
        let c = right.composite().unwrap();
        assert_eq!(c.source, composite.payload);
        assert_eq!(c.target, mm.payload);
        assert!(c.is_identity());
        let left = vertical_left_unit_chain(&mm).unwrap();
        let composite = compose2_vertical(&TwoMorphism::identity(&l).unwrap(), &mm).unwrap();
        let c = left.composite().unwrap();
        assert_eq!(c.source, composite.payload);
        assert!(c.is_identity());
    }
}

#[test]
fn horizontal_units_and_dimensions() {
    let mut r = rng(12);
    for _ in 0..30 {
        let (x, y, z) = (r.gen_range(1..3), r.gen_range(1..3), r.gen_range(1..3));
        let l = rename(
            &{
                let n = r.gen_range(1..4);
                random_span(&mut r, x, y, n)
            },
            "l",
        );
        let m = rename(
            &{
                let n = r.gen_range(1..4);
                random_span(&mut r, x, y, n)
            },
            "m",
        );
        let mm = random_two_morphism(&mut r, &l, &m);
        for side in [false, true] {
            let (chain, u) = horizontal_unit_chain(&mm, side).unwrap();
            let c = chain.composite().unwrap();
            assert!(c.is_identity());
            assert_eq!(c.target, pullback_ls(&u, &mm.payload).unwrap());
        }
        let l2 = rename(
            &{
                let n = r.gen_range(1..4);
                random_span(&mut r, y, z, n)
            },
            "p",
        );
        let m2 = rename(
            &{
                let n = r.gen_range(1..4);
                random_span(&mut r, y, z, n)
            },
            "q",
        );
        let mm2 = random_two_morphism(&mut r, &l2, &m2);
        let h = compose2_horizontal(&mm, &mm2).unwrap();
        let d = horizontal_data(&mm, &mm2).unwrap();
        let mut expected = vec![0; h.intersection.len()];
        for (k, &(s, s2)) in d.pairs.iter().enumerate() {
            expected[d.into_composite[k]] = mm.payload.dims[s] * mm2.payload.dims[s2];
        }
        assert_eq!(h.payload.dims, expected);
        let ones = compose2_horizontal(
            &mm.with_payload(VectorFamily::unit(mm.intersection.len())).unwrap(),
            &mm2.with_payload(VectorFamily::unit(mm2.intersection.len())).unwrap(),
        )
        .unwrap();
        assert!(ones.payload.dims.iter().all(|&n| n <= 1));
    }
}

fn random_three(r: &mut TestRng, two: &TwoMorphism) -> ThreeMorphism {
    let target = two.payload.clone();
    ThreeMorphism::new(two.clone(), random_family_map(r, &two.payload, &target)).unwrap()
}

#[test]
fn three_morphism_compositions() {
    let mut r = rng(13);
    for _ in 0..20 {
        let (x, y, z) = (r.gen_range(1..3), r.gen_range(1..3), r.gen_range(1..3));
        let l = rename(&random_span(&mut r, x, y, 3), "l");
        let m = rename(&random_span(&mut r, x, y, 3), "m");
        let n = rename(&random_span(&mut r, x, y, 3), "n");
        let a = random_two_morphism(&mut r, &l, &m);
        let b = random_two_morphism(&mut r, &m, &n);
        let alpha = random_three(&mut r, &a);
        let t = compose3(Composition3::Transversal, &ThreeMorphism::identity(&a), &alpha).unwrap();
        assert_eq!(t.map, alpha.map);
        let v = compose3(Composition3::Vertical, &ThreeMorphism::identity(&a), &ThreeMorphism::identity(&b)).unwrap();
        assert!(v.map.is_identity());
        assert_eq!(v.two, compose2_vertical(&a, &b).unwrap());

        // Interchange of horizontal and transversal composition, one-dimensional payloads.
        let a = a.with_payload(VectorFamily::unit(a.intersection.len())).unwrap();
        let l2 = rename(&random_span(&mut r, y, z, 3), "p");
        let m2 = rename(&random_span(&mut r, y, z, 3), "q");
        let c = TwoMorphism::new(l2.clone(), m2.clone(), VectorFamily::unit(intersection(&l2, &m2).unwrap().len()))
            .unwrap();
        let (a1, a2) = (random_three(&mut r, &a), random_three(&mut r, &a));
        let (c1, c2) = (random_three(&mut r, &c), random_three(&mut r, &c));
        let lhs = compose3(
            Composition3::Horizontal,
            &compose3(Composition3::Transversal, &a1, &a2).unwrap(),
            &compose3(Composition3::Transversal, &c1, &c2).unwrap(),
        )
        .unwrap();
        let rhs = compose3(
            Composition3::Transversal,
            &compose3(Composition3::Horizontal, &a1, &c1).unwrap(),
            &compose3(Composition3::Horizontal, &a2, &c2).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn two_morphism_interchange_on_unit_payloads() {
    let mut r = rng(14);
    for _ in 0..20 {
        let (x, y, z) = (r.gen_range(1..3), r.gen_range(1..3), r.gen_range(1..3));
        let s: Vec<Span> = (0..3).map(|k| rename(&random_span(&mut r, x, y, 3), &format!("a{k}_"))).collect();
        let t: Vec<Span> = (0..3).map(|k| rename(&random_span(&mut r, y, z, 3), &format!("b{k}_"))).collect();
        let unit = |p: &Span, q: &Span| {
            TwoMorphism::new(p.clone(), q.clone(), VectorFamily::unit(intersection(p, q).unwrap().len())).unwrap()
        };
        let (m, n) = (unit(&s[0], &s[1]), unit(&s[1], &s[2]));
        let (m2, n2) = (unit(&t[0], &t[1]), unit(&t[1], &t[2]));
        let hv =
            compose2_horizontal(&compose2_vertical(&m, &n).unwrap(), &compose2_vertical(&m2, &n2).unwrap()).unwrap();
        let vh =
            compose2_vertical(&compose2_horizontal(&m, &m2).unwrap(), &compose2_horizontal(&n, &n2).unwrap()).unwrap();
        assert_eq!(hv, vh);
    }
}

fn spine_over_points(tables: &[Vec<Vec<usize>>]) -> (ThetaBase, Vec<Vec<EdgeSystem>>) {
    let mut sizes = vec![tables[0].len()];
    sizes.extend(tables.iter().map(|t| t[0].len()));
    let spine = tables.iter().map(|t| vec![EdgeSystem::single(VectorFamily::new(t.concat()))]).collect();
    (ThetaBase::new(sizes).unwrap(), spine)
}

fn random_spine(
    r: &mut TestRng,
    level: usize,
    width: usize,
    height: usize,
    max_dim: usize,
) -> (ThetaBase, Vec<Vec<EdgeSystem>>) {
    let base = ThetaBase::new((0..=level).map(|_| r.gen_range(1..=2)).collect()).unwrap();
    let spine = (0..level)
        .map(|k| (0..width).map(|_| random_edge_system(r, base.face_size(&[k, k + 1]), height, max_dim)).collect())
        .collect();
    (base, spine)
}

#[test]
fn low_levels_are_vacuously_pushpull() {
    let mut r = rng(20);
    for level in 0..=1 {
        let (base, spine) = random_spine(&mut r, level, 1, 0, 2);
        let d = synthesize_filling(&base, &spine).unwrap();
        assert!(d.blocks.is_empty());
        assert!(is_pushpull(&d).unwrap());
    }
}

#[test]
fn canonical_filling_over_points_multiplies_dimension_matrices() {
    let mut r = rng(21);
    for _ in 0..20 {
        let (a, b, c) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
        let p = random_table(&mut r, a, b, 2);
        let q = random_table(&mut r, b, c, 2);
        let (base, spine) = spine_over_points(&[p.clone(), q.clone()]);
        let d = synthesize_filling(&base, &spine).unwrap();
        assert_eq!(d.edges[&(0, 2)][0].chain[0].dims, matrix_product(&p, &q).concat());
        assert!(is_pushpull(&d).unwrap());
        let maps = pushpull_maps(&d).unwrap();
        assert!(maps[&vec![0, 1, 2]][0][0].is_identity());
    }
}

#[test]
fn canonical_fillings_are_pushpull_and_structurally_valid() {
    let mut r = rng(22);
    for level in 2..=3 {
        for _ in 0..6 {
            let width = r.gen_range(1..=2);
            let height = r.gen_range(0..=1);
            let (base, spine) = random_spine(&mut r, level, width, height, 2);
            let d = synthesize_filling(&base, &spine).unwrap();
            d.validate().unwrap();
            assert!(is_pushpull(&d).unwrap());
            let top: Vec<usize> = (0..=level).collect();
            for tower in &pushpull_maps(&d).unwrap()[&top] {
                assert!(tower.iter().all(FamilyMap::is_identity));
            }
            // Adjunct of the adjunct gives back the structure map.
            let face: Vec<usize> = vec![0, 1, level];
            let p = base.projection(&face, &[0, level]);
            let phi = &d.blocks[&face][0][0];
            let dagger = &pushpull_maps(&d).unwrap()[&face][0][0];
            assert_eq!(&adjunct_left(&p, &phi.target, dagger).unwrap(), phi);
        }
    }
}

#[test]
fn zero_spine_gives_zero_filling() {
    let base = ThetaBase::new(vec![2, 1, 2]).unwrap();
    let spine = vec![vec![EdgeSystem::single(VectorFamily::zero(2))], vec![EdgeSystem::single(VectorFamily::zero(2))]];
    let d = synthesize_filling(&base, &spine).unwrap();
    assert!(d.edges[&(0, 2)][0].chain[0].dims.iter().all(|&n| n == 0));
    assert!(is_pushpull(&d).unwrap());
}

/// Replaces `r_{0,2}` by a family one dimension smaller at its first
/// nonzero point, restricting the structure maps along the inclusion.
fn shrink(d: &PushPullThetaDiagram) -> Option<PushPullThetaDiagram> {
    let r02 = &d.edges[&(0, 2)][0].chain[0];
    let x = r02.dims.iter().position(|&n| n > 0)?;
    let mut small = r02.clone();
    small.dims[x] -= 1;
    let blocks = small
        .dims
        .iter()
        .zip(&r02.dims)
        .map(|(&s, &n)| Matrix::from_assignment(n, s, &(0..s).collect::<Vec<_>>()))
        .collect();
    let inc = FamilyMap::new(small.clone(), r02.clone(), blocks).unwrap();
    let mut out = d.clone();
    out.edges.get_mut(&(0, 2)).unwrap()[0].chain[0] = small;
    for (face, per_slot) in out.blocks.iter_mut() {
        let p = d.base.projection(face, &[face[0], face[face.len() - 1]]);
        if face[0] == 0 && face[face.len() - 1] == 2 {
            per_slot[0][0] = compose(&per_slot[0][0], &pullback_map(&p, &inc).unwrap()).unwrap();
        }
    }
    Some(out)
}

#[test]
fn shrunken_filling_is_not_pushpull() {
    let mut r = rng(23);
    let mut checked = 0;
    for _ in 0..10 {
        let (base, spine) = random_spine(&mut r, 2, 1, 0, 2);
        let d = synthesize_filling(&base, &spine).unwrap();
        if let Some(bad) = shrink(&d) {
            bad.validate().unwrap();
            assert!(!is_pushpull(&bad).unwrap());
            assert_eq!(find_iso(&d, &bad).unwrap(), IsoSearch::NotIsomorphic);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn pushpull_fillings_over_a_spine_are_isomorphic() {
    let mut r = rng(24);
    for level in 2..=3 {
        for _ in 0..8 {
            let width = r.gen_range(1..=2);
            let height = r.gen_range(0..=1);
            let (base, spine) = random_spine(&mut r, level, width, height, 2);
            let canonical = synthesize_filling(&base, &spine).unwrap();
            let psi = random_edge_isos(&mut r, &canonical);
            let other = transport(&canonical, &psi).unwrap();
            assert!(is_pushpull(&other).unwrap());
            match find_iso(&canonical, &other).unwrap() {
                IsoSearch::Found(found) => {
                    assert!(is_diagram_iso(&canonical, &other, &found).unwrap());
                    assert_eq!(found, psi);
                }
                other => panic!("no isomorphism found: {other:?}"),
            }
        }
    }
}

#[test]
fn broken_commutativity_is_rejected() {
    let mut r = rng(25);
    let (base, spine) = random_spine(&mut r, 3, 1, 0, 2);
    let d = synthesize_filling(&base, &spine).unwrap();
    let mut bad = d.clone();
    let phi = &mut bad.blocks.get_mut(&vec![0, 1, 2, 3]).unwrap()[0][0];
    if let Some(x) = (0..phi.base()).find(|&x| phi.blocks[x].rows() * phi.blocks[x].cols() > 0) {
        phi.blocks[x] = Matrix::zeros(phi.blocks[x].rows(), phi.blocks[x].cols());
        assert!(matches!(bad.validate(), Err(Error::NotCommutative(_))));
    }
}

/// At point feet the two bracketings of a triple vertical composite are
/// related by `φ†_{013} ∘ (φ†_{023})⁻¹`; compare it with the permutation
/// matching summand labels.
#[test]
fn associativity_iso_from_the_level_three_filling() {
    let mut r = rng(26);
    for _ in 0..10 {
        let sizes: Vec<usize> = (0..4).map(|_| r.gen_range(1..=2)).collect();
        let tables: Vec<Vec<Vec<usize>>> = (0..3).map(|k| random_table(&mut r, sizes[k], sizes[k + 1], 2)).collect();
        let ms = chain_over_points(&tables);
        let left = compose2_vertical(&compose2_vertical(&ms[0], &ms[1]).unwrap(), &ms[2]).unwrap();
        let right = compose2_vertical(&ms[0], &compose2_vertical(&ms[1], &ms[2]).unwrap()).unwrap();
        let (base, spine) = spine_over_points(&tables);
        let d = synthesize_filling(&base, &spine).unwrap();
        let maps = pushpull_maps(&d).unwrap();
        let via_013 = &maps[&vec![0, 1, 3]][0][0];
        let via_023 = &maps[&vec![0, 2, 3]][0][0];
        assert_eq!(via_013.target, right.payload);
        assert_eq!(via_023.target, left.payload);
        let assoc = compose(via_013, &via_023.inverse().unwrap()).unwrap();

        // Oracle: (𝓛∘𝓜)∘𝓝 has summands (c, b, i, j, k) and 𝓛∘(𝓜∘𝓝) has (b, i, c, j, k).
        let dim = |t: usize, a: usize, b: usize| tables[t][a][b];
        for a in 0..sizes[0] {
            for e in 0..sizes[3] {
                let mut lhs = Vec::new();
                for c in 0..sizes[2] {
                    for b in 0..sizes[1] {
                        for i in 0..dim(0, a, b) {
                            for j in 0..dim(1, b, c) {
                                for k in 0..dim(2, c, e) {
                                    lhs.push((b, i, c, j, k));
                                }
                            }
                        }
                    }
                }
                let mut rhs = lhs.clone();
                rhs.sort();
                let target: Vec<usize> = lhs.iter().map(|x| rhs.binary_search(x).unwrap()).collect();
                let point = a * sizes[3] + e;
                assert_eq!(assoc.blocks[point], Matrix::from_assignment(rhs.len(), lhs.len(), &target));
            }
        }
    }
}

#[test]
fn iso_search_reports_different_spines() {
    let mut r = rng(27);
    let (base, spine) = random_spine(&mut r, 2, 1, 0, 2);
    let d = synthesize_filling(&base, &spine).unwrap();
    let mut other_spine = spine.clone();
    other_spine[0][0].chain[0].dims[0] += 1;
    let e = synthesize_filling(&base, &other_spine).unwrap();
    assert!(matches!(find_iso(&d, &e), Err(Error::SpanMismatch(_))));
}
