use proptest::prelude::*;
use rand::Rng;

use spancalc::fincat::*;
use spancalc::random::{random_free_category, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn right_kan_is_the_end_formula(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let na = r.gen_range(1..=3);
        let nb = r.gen_range(1..=4);
        let a = random_free_category(&mut r, na, 0.5, 8);
        let b = random_free_category(&mut r, nb, 0.6, 12);
        let Some(f) = a.random_functor(&mut r, &b.category) else { return Ok(()) };
        let g = a.random_diagram(&mut r, 0, 3);
        for obj in 0..nb {
            let (_, lim) = right_kan(&a.category, &b.category, &f, &g, obj);
            let mut apex = lim.apex.clone();
            apex.sort();
            prop_assert_eq!(apex, right_kan_end(&a.category, &b.category, &f, &g, obj).unwrap());
        }
        let (d, _) = right_kan_diagram(&a.category, &b.category, &f, &g);
        prop_assert!(d.validate().is_ok());
    }

    #[test]
    fn end_of_hom_is_nat(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let c = random_free_category(&mut r, n, 0.5, 8);
        let f = c.random_diagram(&mut r, 0, 2);
        let g = c.random_diagram(&mut r, 0, 3);
        prop_assert_eq!(nat_from_end(&f, &g).unwrap(), nat_bruteforce(&f, &g));
    }

    #[test]
    fn limits_agree_with_brute_force(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let c = random_free_category(&mut r, n, 0.5, 12);
        let d = c.random_diagram(&mut r, 0, 3);
        let mut fast = limit(&d).apex;
        fast.sort();
        let mut slow = limit_bruteforce(&d).apex;
        slow.sort();
        prop_assert_eq!(fast, slow);
    }
}

#[test]
fn kan_along_the_identity_is_the_diagram() {
    let mut r = rng(3);
    let c = random_free_category(&mut r, 3, 0.6, 10);
    let id = Functor::full_inclusion(&c.category, &[0, 1, 2]).1;
    let g = c.random_diagram(&mut r, 1, 3);
    let (d, _) = right_kan_diagram(&c.category, &c.category, &id, &g);
    assert_eq!(d.sizes, g.sizes);
}

#[test]
fn nat_via_the_cone_matches_brute_force() {
    let mut r = rng(8);
    for _ in 0..10 {
        let base = random_free_category(&mut r, 2, 0.7, 6).category;
        let (cone, _) = base.cone();
        let f = Diagram::constant(cone.clone(), 2);
        let g = Diagram::constant(cone, 3);
        assert_eq!(nat_via_cone(&f, &g, &base), nat_bruteforce(&f, &g));
    }
}
