use std::collections::HashMap;

use super::limit::{limit, LimitResult, UnionFind};
use super::{Bifunctor, Diagram, FinCategory, FunctionSet, Morphism};

/// The twisted arrow category of `A`. Object `k` is morphism `k` of `A`; an
/// arrow `f => g` is a pair `(u, v)` with `g = v ∘ f ∘ u`.
#[derive(Clone, Debug)]
pub struct TwistedArrow {
    pub category: FinCategory,
    /// `(u, v)` for each morphism of the twisted arrow category.
    pub pairs: Vec<(usize, usize)>,
}

pub fn twisted_arrow(a: &FinCategory) -> TwistedArrow {
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for (f, mf) in a.morphisms().iter().enumerate() {
        // u : b -> src f, v : dst f -> b'
        for &u in a.incoming(mf.src) {
            let fu = a.compose(f, u).expect("composable");
            for &v in a.outgoing(mf.dst) {
                let g = a.compose(v, fu).expect("composable");
                index.insert((f, u, v), morphisms.len());
                morphisms.push(Morphism { src: f, dst: g });
                pairs.push((u, v));
            }
        }
    }
    let identities: Vec<usize> =
        a.morphisms().iter().enumerate().map(|(f, m)| index[&(f, a.identity(m.src), a.identity(m.dst))]).collect();
    let mut composition = Vec::new();
    for (k, m) in morphisms.iter().enumerate() {
        let (u, v) = pairs[k];
        for (k2, m2) in morphisms.iter().enumerate() {
            if m2.src != m.dst {
                continue;
            }
            let (u2, v2) = pairs[k2];
            let uu = a.compose(u, u2).expect("composable");
            let vv = a.compose(v2, v).expect("composable");
            composition.push((k2, k, index[&(m.src, uu, vv)]));
        }
    }
    let category =
        FinCategory::assemble(a.morphism_count(), morphisms, identities, &composition).expect("twisted arrows");
    TwistedArrow { category, pairs }
}

/// The end of `H`, as a limit over the twisted arrow category.
#[derive(Clone, Debug)]
pub struct EndResult {
    pub limit: LimitResult,
    /// For each shape object `a`, the morphism index of `id_a`.
    pub diagonal: Vec<usize>,
}

impl EndResult {
    pub fn len(&self) -> usize {
        self.limit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.limit.is_empty()
    }

    /// Components of element `i` at the identity objects, in `H(a, a)`.
    pub fn components(&self, i: usize) -> Vec<usize> {
        self.diagonal.iter().map(|&d| self.limit.apex[i][d]).collect()
    }
}

/// The diagram on the twisted arrow category sending `f : a -> a'` to `H(a, a')`.
pub fn twisted_diagram(h: &Bifunctor) -> (TwistedArrow, Diagram) {
    let a = &h.shape;
    let tw = twisted_arrow(a);
    let sizes = a.morphisms().iter().map(|m| h.sizes[m.src][m.dst]).collect();
    let actions = tw
        .category
        .morphisms()
        .iter()
        .zip(&tw.pairs)
        .map(|(m, &(u, v))| {
            let src = a.morphism(m.src);
            (0..h.sizes[src.src][src.dst]).map(|x| h.act(u, v, x)).collect()
        })
        .collect();
    let d = Diagram { shape: tw.category.clone(), sizes, actions };
    (tw, d)
}

pub fn end(h: &Bifunctor) -> EndResult {
    let (_, d) = twisted_diagram(h);
    let diagonal = (0..h.shape.object_count()).map(|a| h.shape.identity(a)).collect();
    EndResult { limit: limit(&d), diagonal }
}

/// The coend of `H`: classes of `⊔_a H(a, a)` under `H(f, a)(x) ~ H(a', f)(x)`
/// for `f : a -> a'` and `x ∈ H(a', a)`. Elements are `(a, x)`.
pub fn coend(h: &Bifunctor) -> Vec<Vec<(usize, usize)>> {
    let c = &h.shape;
    let n = c.object_count();
    let diag: Vec<usize> = (0..n).map(|a| h.sizes[a][a]).collect();
    let mut uf = UnionFind::new(&diag);
    for (f, m) in c.morphisms().iter().enumerate() {
        let (a, a2) = (m.src, m.dst);
        for x in 0..h.sizes[a2][a] {
            let l = h.left[&(f, a)][x];
            let r = h.right[&(a2, f)][x];
            uf.union((a, l), (a2, r));
        }
    }
    uf.classes()
}

/// A natural transformation, one function `F a -> G a` per object.
pub type NatTrans = Vec<Vec<usize>>;

/// Natural transformations `F -> G` by backtracking over objects.
pub fn nat_bruteforce(f: &Diagram, g: &Diagram) -> Vec<NatTrans> {
    let n = f.shape.object_count();
    let mut out = Vec::new();
    let mut cur: Vec<Option<Vec<usize>>> = vec![None; n];
    nat_search(f, g, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn nat_search(f: &Diagram, g: &Diagram, a: usize, cur: &mut Vec<Option<Vec<usize>>>, out: &mut Vec<NatTrans>) {
    let n = f.shape.object_count();
    if a == n {
        out.push(cur.iter().map(|c| c.clone().expect("assigned")).collect());
        return;
    }
    let fs = FunctionSet::new(f.sizes[a], g.sizes[a]);
    for x in 0..fs.len() {
        let eta = fs.decode(x);
        cur[a] = Some(eta);
        let ok = f.shape.morphisms().iter().enumerate().all(|(k, m)| {
            if m.src.max(m.dst) != a {
                return true;
            }
            let (Some(es), Some(ed)) = (&cur[m.src], &cur[m.dst]) else { return true };
            (0..f.sizes[m.src]).all(|y| g.actions[k][es[y]] == ed[f.actions[k][y]])
        });
        if ok {
            nat_search(f, g, a + 1, cur, out);
        }
    }
    cur[a] = None;
}

/// Reads off natural transformations from the end of `Hom(F -, G -)`.
pub fn nat_from_end(f: &Diagram, g: &Diagram) -> crate::Result<Vec<NatTrans>> {
    let h = Bifunctor::hom(f, g)?;
    let e = end(&h);
    let n = f.shape.object_count();
    let mut out: Vec<NatTrans> = (0..e.len())
        .map(|i| {
            let comps = e.components(i);
            (0..n).map(|a| FunctionSet::new(f.sizes[a], g.sizes[a]).decode(comps[a])).collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// For `F, G` on `base.cone()` computes the pullback
/// `Nat(F_0, G_0) ×_{lim_a Hom(F apex, G a)} Hom(F apex, G apex)` and returns it
/// as natural transformations on the whole cone.
pub fn nat_via_cone(f: &Diagram, g: &Diagram, base: &FinCategory) -> Vec<NatTrans> {
    let c = &f.shape;
    let apex = base.object_count();
    let base_objects: Vec<usize> = (0..apex).collect();
    // cone() keeps the base morphisms at their indices
    let inc: Vec<usize> = (0..base.morphism_count()).collect();
    let f0 = f.restrict(base, &base_objects, &inc);
    let g0 = g.restrict(base, &base_objects, &inc);
    let base_nats = nat_bruteforce(&f0, &g0);
    let legs: Vec<usize> = base_objects.iter().map(|&a| c.hom(apex, a)[0]).collect();
    let apex_maps = FunctionSet::new(f.sizes[apex], g.sizes[apex]);
    // image of η_0 in lim_a Hom(F apex, G a): a ↦ η_a ∘ F(leg_a)
    let from_base = |eta: &NatTrans| -> Vec<Vec<usize>> {
        legs.iter().enumerate().map(|(i, &l)| f.actions[l].iter().map(|&y| eta[i][y]).collect()).collect()
    };
    // image of h: a ↦ G(leg_a) ∘ h
    let from_apex = |h: &[usize]| -> Vec<Vec<usize>> {
        legs.iter().map(|&l| h.iter().map(|&y| g.actions[l][y]).collect()).collect()
    };
    let mut by_image: HashMap<Vec<Vec<usize>>, Vec<Vec<usize>>> = HashMap::new();
    for x in 0..apex_maps.len() {
        let h = apex_maps.decode(x);
        by_image.entry(from_apex(&h)).or_default().push(h);
    }
    let mut out = Vec::new();
    for eta in &base_nats {
        if let Some(hs) = by_image.get(&from_base(eta)) {
            for h in hs {
                let mut full: NatTrans = vec![Vec::new(); c.object_count()];
                for (i, &a) in base_objects.iter().enumerate() {
                    full[a] = eta[i].clone();
                }
                full[apex] = h.clone();
                out.push(full);
            }
        }
    }
    out.sort();
    out
}
