use std::collections::HashMap;

use super::limit::{limit, LimitResult};
use super::{Bifunctor, Diagram, FinCategory, FunctionSet, Functor, Morphism};
use crate::error::Result;

/// The comma category `b/F` for `F : A -> B`. Objects are pairs `(a, h)` with
/// `h : b -> F a`; morphism `k` lies over `over[k]` in `A`.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: FinCategory,
    pub objects: Vec<(usize, usize)>,
    pub over: Vec<usize>,
}

pub fn comma(a: &FinCategory, b_cat: &FinCategory, f: &Functor, b: usize) -> Comma {
    let mut objects = Vec::new();
    let mut position = HashMap::new();
    for x in 0..a.object_count() {
        for h in b_cat.hom(b, f.on_objects[x]) {
            position.insert((x, h), objects.len());
            objects.push((x, h));
        }
    }
    let mut morphisms = Vec::new();
    let mut over = Vec::new();
    let mut index = HashMap::new();
    for (o, &(x, h)) in objects.iter().enumerate() {
        for &g in a.outgoing(x) {
            let h2 = b_cat.compose(f.on_morphisms[g], h).expect("composable");
            let dst = position[&(a.morphism(g).dst, h2)];
            index.insert((g, o), morphisms.len());
            morphisms.push(Morphism { src: o, dst });
            over.push(g);
        }
    }
    let identities = objects.iter().enumerate().map(|(o, &(x, _))| index[&(a.identity(x), o)]).collect();
    let mut composition = Vec::new();
    for (k, m) in morphisms.iter().enumerate() {
        for (k2, m2) in morphisms.iter().enumerate() {
            if m2.src == m.dst {
                let g = a.compose(over[k2], over[k]).expect("composable");
                composition.push((k2, k, index[&(g, m.src)]));
            }
        }
    }
    let category = FinCategory::assemble(objects.len(), morphisms, identities, &composition).expect("comma category");
    Comma { category, objects, over }
}

/// `(Ran_F G)(b)` as the limit of `G` over `b/F`. Apex tuples are indexed by
/// the comma objects.
pub fn right_kan(a: &FinCategory, b_cat: &FinCategory, f: &Functor, g: &Diagram, b: usize) -> (Comma, LimitResult) {
    let c = comma(a, b_cat, f, b);
    let sizes = c.objects.iter().map(|&(x, _)| g.sizes[x]).collect();
    let actions = c.over.iter().map(|&k| g.actions[k].clone()).collect();
    let d = Diagram { shape: c.category.clone(), sizes, actions };
    let lim = limit(&d);
    (c, lim)
}

/// The whole right Kan extension as a diagram on `B`, together with the
/// pointwise comma data.
pub fn right_kan_diagram(
    a: &FinCategory,
    b_cat: &FinCategory,
    f: &Functor,
    g: &Diagram,
) -> (Diagram, Vec<(Comma, LimitResult)>) {
    let values: Vec<(Comma, LimitResult)> = (0..b_cat.object_count()).map(|b| right_kan(a, b_cat, f, g, b)).collect();
    let positions: Vec<HashMap<(usize, usize), usize>> =
        values.iter().map(|(c, _)| c.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect()).collect();
    let actions = b_cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let (_, src_lim) = &values[m.src];
            let (dst_comma, dst_lim) = &values[m.dst];
            src_lim
                .apex
                .iter()
                .map(|tuple| {
                    // (x, h') over b' reads the component at (x, h' ∘ k) over b
                    let image: Vec<usize> = dst_comma
                        .objects
                        .iter()
                        .map(|&(x, h2)| {
                            let h = b_cat.compose(h2, k).expect("composable");
                            tuple[positions[m.src][&(x, h)]]
                        })
                        .collect();
                    dst_lim.position(&image).expect("restriction of a compatible family")
                })
                .collect()
        })
        .collect();
    let sizes = values.iter().map(|(_, l)| l.len()).collect();
    let d = Diagram { shape: b_cat.clone(), sizes, actions };
    (d, values)
}

/// `∫_a Hom(B(b, F a), G a)` computed as the end of a hom bifunctor. Each
/// element is returned as the family `(a, h) ↦ η_a(h)` indexed like the comma
/// category objects, so the result is directly comparable with `right_kan`.
pub fn right_kan_end(
    a: &FinCategory,
    b_cat: &FinCategory,
    f: &Functor,
    g: &Diagram,
    b: usize,
) -> Result<Vec<Vec<usize>>> {
    let homs: Vec<Vec<usize>> = (0..a.object_count()).map(|x| b_cat.hom(b, f.on_objects[x])).collect();
    let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let actions = a
        .morphisms()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            homs[m.src]
                .iter()
                .map(|&h| {
                    let h2 = b_cat.compose(f.on_morphisms[k], h).expect("composable");
                    homs[m.dst].iter().position(|&y| y == h2).expect("hom member")
                })
                .collect()
        })
        .collect();
    let represented = Diagram::new(a.clone(), sizes, actions)?;
    let hb = Bifunctor::hom(&represented, g)?;
    let e = super::end(&hb);
    let mut out: Vec<Vec<usize>> = (0..e.len())
        .map(|i| {
            let comps = e.components(i);
            let mut family = Vec::new();
            for x in 0..a.object_count() {
                let eta = FunctionSet::new(homs[x].len(), g.sizes[x]).decode(comps[x]);
                family.extend(eta);
            }
            family
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kan_along_full_inclusion_restricts() {
        let b_cat = FinCategory::chain(2);
        let (a, inc) = Functor::full_inclusion(&b_cat, &[1, 2]);
        let g = Diagram::constant(a.clone(), 3);
        // 1 is in the image; 1/I has initial object (1, id)
        let (_, lim) = right_kan(&a, &b_cat, &inc, &g, 1);
        assert_eq!(lim.len(), 3);
        // 0/I is connected and nonempty, G constant
        let (_, lim0) = right_kan(&a, &b_cat, &inc, &g, 0);
        assert_eq!(lim0.len(), 3);
        assert_eq!(right_kan_end(&a, &b_cat, &inc, &g, 0).unwrap(), lim0.apex);
    }

    #[test]
    fn kan_diagram_is_a_functor() {
        let b_cat = FinCategory::chain(2);
        let (a, inc) = Functor::full_inclusion(&b_cat, &[1, 2]);
        let arrow = a.hom(0, 1)[0];
        let mut actions = vec![Vec::new(); a.morphism_count()];
        actions[a.identity(0)] = vec![0, 1];
        actions[a.identity(1)] = vec![0, 1, 2];
        actions[arrow] = vec![2, 0];
        let g = Diagram::new(a.clone(), vec![2, 3], actions).unwrap();
        let (d, _) = right_kan_diagram(&a, &b_cat, &inc, &g);
        d.validate().unwrap();
        assert_eq!(d.sizes, vec![2, 2, 3]);
    }

    #[test]
    fn empty_comma_gives_singleton() {
        let b_cat = FinCategory::discrete(2);
        let (a, inc) = Functor::full_inclusion(&b_cat, &[1]);
        let g = Diagram::constant(a.clone(), 4);
        let (_, lim) = right_kan(&a, &b_cat, &inc, &g, 0);
        assert_eq!(lim.len(), 1);
    }
}
