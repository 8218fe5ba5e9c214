use proptest::prelude::*;

use spancalc::simplex::*;

#[test]
fn closed_form_counts() {
    for n in 0..=5 {
        let s = build_sigma(n);
        assert_eq!(s.objects.len(), (n + 1) * (n + 2) / 2);
        assert_eq!(s.lambda.iter().filter(|&&f| f).count(), 2 * n + 1);
        let t = build_theta(n);
        assert_eq!(t.objects.len(), (1 << (n + 1)) - 1);
        assert_eq!(t.xi.iter().filter(|&&f| f).count(), n + 1);
    }
    assert_eq!(build_sigma(3).objects.len(), 10);
    assert_eq!(build_theta(2).objects.len(), 7);
}

#[test]
fn sigma_arrows_are_subintervals() {
    let s = build_sigma(4);
    for (a, x) in s.objects.iter().enumerate() {
        for (b, y) in s.objects.iter().enumerate() {
            let (x0, x1) = (x.apply(0), x.apply(x.source()));
            let (y0, y1) = (y.apply(0), y.apply(y.source()));
            assert_eq!(s.poset.arrow(a, b), x0 <= y0 && y1 <= x1, "{x:?} {y:?}");
        }
    }
}

#[test]
fn theta_arrows_are_inclusions() {
    let t = build_theta(3);
    for (a, x) in t.objects.iter().enumerate() {
        for (b, y) in t.objects.iter().enumerate() {
            assert_eq!(t.poset.arrow(a, b), y.iter().all(|p| x.contains(p)));
        }
    }
}

fn monotone(n: usize, m: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
        v.sort_unstable();
        MonotoneMap::new(n, m, v).unwrap()
    })
}

proptest! {
    #[test]
    fn pushes_are_functorial(
        (a, b) in (0usize..4, 0usize..4).prop_flat_map(|(n, m)| (monotone(n, m), (0usize..4).prop_flat_map(move |k| monotone(m, k)))),
        which in any::<prop::sample::Index>(),
    ) {
        let ba = b.compose(&a).unwrap();
        let sigma = build_sigma(a.source());
        let phi = &sigma.objects[which.index(sigma.objects.len())];
        let two = push_sigma(&b, &push_sigma(&a, phi).unwrap()).unwrap();
        prop_assert_eq!(push_sigma(&ba, phi).unwrap(), two);
        let theta = build_theta(a.source());
        let s = &theta.objects[which.index(theta.objects.len())];
        let two = push_theta(&b, &push_theta(&a, s).unwrap()).unwrap();
        prop_assert_eq!(push_theta(&ba, s).unwrap(), two);
    }

    #[test]
    fn pushes_preserve_arrows(a in (0usize..4, 0usize..4).prop_flat_map(|(n, m)| monotone(n, m))) {
        let sigma = build_sigma(a.source());
        let target = build_sigma(a.target());
        for (x, px) in sigma.objects.iter().enumerate() {
            for (y, py) in sigma.objects.iter().enumerate() {
                if sigma.poset.arrow(x, y) {
                    let (fx, fy) = (push_sigma(&a, px).unwrap(), push_sigma(&a, py).unwrap());
                    let (i, j) = (target.index_of_map(&fx).unwrap(), target.index_of_map(&fy).unwrap());
                    prop_assert!(target.poset.arrow(i, j));
                }
            }
        }
    }
}
