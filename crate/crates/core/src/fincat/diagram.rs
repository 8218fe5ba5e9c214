use std::collections::HashMap;

use super::FinCategory;
use crate::error::{Error, Result};

/// A functor from a finite category to finite sets. The set at object `a` is
/// `0..sizes[a]`; `actions[f]` is the function for morphism `f`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub shape: FinCategory,
    pub sizes: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn new(shape: FinCategory, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        let d = Diagram { shape, sizes, actions };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.shape;
        if self.sizes.len() != c.object_count() || self.actions.len() != c.morphism_count() {
            return Err(Error::NotAFunctor("diagram data does not match its shape".into()));
        }
        for (f, m) in c.morphisms().iter().enumerate() {
            let act = &self.actions[f];
            if act.len() != self.sizes[m.src] || act.iter().any(|&y| y >= self.sizes[m.dst]) {
                return Err(Error::NotAFunctor(format!("action of morphism {f} mistyped")));
            }
        }
        for a in 0..c.object_count() {
            let id = &self.actions[c.identity(a)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::NotAFunctor(format!("identity of {a} acts nontrivially")));
            }
        }
        for (g, f, h) in c.composition_triples() {
            let (ag, af, ah) = (&self.actions[g], &self.actions[f], &self.actions[h]);
            if af.iter().zip(ah).any(|(&y, &z)| ag[y] != z) {
                return Err(Error::NotAFunctor(format!("composite ({g},{f}) not preserved")));
            }
        }
        Ok(())
    }

    /// Restriction along a functor `F : A -> shape`.
    pub fn restrict(&self, source: &FinCategory, on_objects: &[usize], on_morphisms: &[usize]) -> Diagram {
        Diagram {
            shape: source.clone(),
            sizes: on_objects.iter().map(|&o| self.sizes[o]).collect(),
            actions: on_morphisms.iter().map(|&f| self.actions[f].clone()).collect(),
        }
    }

    pub fn constant(shape: FinCategory, size: usize) -> Diagram {
        let sizes = vec![size; shape.object_count()];
        let actions = vec![(0..size).collect(); shape.morphism_count()];
        Diagram { shape, sizes, actions }
    }
}

/// A functor `A^op × A -> Set`, stored through its two one-sided actions.
#[derive(Clone, Debug)]
pub struct Bifunctor {
    pub shape: FinCategory,
    /// `sizes[a][b]` is the size of `H(a, b)`.
    pub sizes: Vec<Vec<usize>>,
    /// `(u, b)` with `u : c -> a` gives `H(u, b) : H(a, b) -> H(c, b)`.
    pub left: HashMap<(usize, usize), Vec<usize>>,
    /// `(a, v)` with `v : b -> d` gives `H(a, v) : H(a, b) -> H(a, d)`.
    pub right: HashMap<(usize, usize), Vec<usize>>,
}

impl Bifunctor {
    pub fn new(
        shape: FinCategory,
        sizes: Vec<Vec<usize>>,
        left: HashMap<(usize, usize), Vec<usize>>,
        right: HashMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let h = Bifunctor { shape, sizes, left, right };
        h.validate()?;
        Ok(h)
    }

    /// `H(u, v) : H(a, b) -> H(c, d)` for `u : c -> a`, `v : b -> d`.
    pub fn act(&self, u: usize, v: usize, x: usize) -> usize {
        let a = self.shape.morphism(u).dst;
        let d = self.shape.morphism(v).dst;
        let y = self.right[&(a, v)][x];
        self.left[&(u, d)][y]
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.shape;
        let n = c.object_count();
        let bad = |s: String| Err(Error::NotAFunctor(s));
        if self.sizes.len() != n || self.sizes.iter().any(|r| r.len() != n) {
            return bad("bifunctor sizes do not match the shape".into());
        }
        for (u, m) in c.morphisms().iter().enumerate() {
            for b in 0..n {
                let Some(act) = self.left.get(&(u, b)) else { return bad(format!("missing left action ({u},{b})")) };
                if act.len() != self.sizes[m.dst][b] || act.iter().any(|&y| y >= self.sizes[m.src][b]) {
                    return bad(format!("left action ({u},{b}) mistyped"));
                }
                let Some(act) = self.right.get(&(b, u)) else { return bad(format!("missing right action ({b},{u})")) };
                if act.len() != self.sizes[b][m.src] || act.iter().any(|&y| y >= self.sizes[b][m.dst]) {
                    return bad(format!("right action ({b},{u}) mistyped"));
                }
            }
        }
        for a in 0..n {
            let id = c.identity(a);
            for b in 0..n {
                if self.left[&(id, b)].iter().enumerate().any(|(x, &y)| x != y)
                    || self.right[&(b, id)].iter().enumerate().any(|(x, &y)| x != y)
                {
                    return bad(format!("identity of {a} acts nontrivially"));
                }
            }
        }
        for (g, f, h) in c.composition_triples() {
            for b in 0..n {
                // contravariant: H(g∘f) = H(f) ∘ H(g)
                let (lg, lf, lh) = (&self.left[&(g, b)], &self.left[&(f, b)], &self.left[&(h, b)]);
                if lg.iter().zip(lh).any(|(&y, &z)| lf[y] != z) {
                    return bad(format!("left action not functorial at ({g},{f})"));
                }
                let (rg, rf, rh) = (&self.right[&(b, g)], &self.right[&(b, f)], &self.right[&(b, h)]);
                if rf.iter().zip(rh).any(|(&y, &z)| rg[y] != z) {
                    return bad(format!("right action not functorial at ({g},{f})"));
                }
            }
        }
        for (u, mu) in c.morphisms().iter().enumerate() {
            for (v, mv) in c.morphisms().iter().enumerate() {
                // H(a,b) -> H(c,d) both ways, u : c -> a, v : b -> d
                let (a, b, d) = (mu.dst, mv.src, mv.dst);
                for x in 0..self.sizes[a][b] {
                    let one = self.left[&(u, d)][self.right[&(a, v)][x]];
                    let two = self.right[&(mu.src, v)][self.left[&(u, b)][x]];
                    if one != two {
                        return bad(format!("actions of {u} and {v} do not commute"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `H(a, b) = Hom_Set(F a, G b)` for diagrams `F`, `G` on the same shape.
    pub fn hom(f: &Diagram, g: &Diagram) -> Result<Bifunctor> {
        let c = &f.shape;
        let n = c.object_count();
        let sets: Vec<Vec<FunctionSet>> =
            (0..n).map(|a| (0..n).map(|b| FunctionSet::new(f.sizes[a], g.sizes[b])).collect()).collect();
        let sizes = sets.iter().map(|r| r.iter().map(|s| s.len()).collect()).collect();
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        for (u, m) in c.morphisms().iter().enumerate() {
            for b in 0..n {
                // precompose with F(u) : F c -> F a
                let (src, dst) = (&sets[m.dst][b], &sets[m.src][b]);
                let act = (0..src.len())
                    .map(|x| {
                        let h = src.decode(x);
                        dst.encode(&f.actions[u].iter().map(|&y| h[y]).collect::<Vec<_>>())
                    })
                    .collect();
                left.insert((u, b), act);
                // postcompose with G(u) : G c -> G a
                let (src, dst) = (&sets[b][m.src], &sets[b][m.dst]);
                let act = (0..src.len())
                    .map(|x| {
                        let h = src.decode(x);
                        dst.encode(&h.iter().map(|&y| g.actions[u][y]).collect::<Vec<_>>())
                    })
                    .collect();
                right.insert((b, u), act);
            }
        }
        Bifunctor::new(c.clone(), sizes, left, right)
    }
}

/// The set of functions `0..dom -> 0..cod`, indexed in mixed radix with the
/// value at 0 least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionSet {
    pub dom: usize,
    pub cod: usize,
}

impl FunctionSet {
    pub fn new(dom: usize, cod: usize) -> Self {
        FunctionSet { dom, cod }
    }

    pub fn len(&self) -> usize {
        self.cod.checked_pow(self.dom as u32).expect("function set too large")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, f: &[usize]) -> usize {
        f.iter().rev().fold(0, |acc, &v| acc * self.cod + v)
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        (0..self.dom)
            .map(|_| {
                let v = x % self.cod;
                x /= self.cod;
                v
            })
            .collect()
    }
}

/// The cotensor `c^T`: all functions `T -> c`, in index order.
pub fn cotensor(t: usize, c: usize) -> Vec<Vec<usize>> {
    let fs = FunctionSet::new(t, c);
    (0..fs.len()).map(|x| fs.decode(x)).collect()
}

/// Currying bijection `Hom(T × c, d) -> Hom(T, Hom(c, d))`, with `(t, x)`
/// at position `t * c + x`. Returns the image index for every element.
pub fn curry_bijection(t: usize, c: usize, d: usize) -> Vec<usize> {
    let whole = FunctionSet::new(t * c, d);
    let inner = FunctionSet::new(c, d);
    let outer = FunctionSet::new(t, inner.len());
    (0..whole.len())
        .map(|x| {
            let f = whole.decode(x);
            let curried: Vec<usize> = (0..t).map(|ti| inner.encode(&f[ti * c..(ti + 1) * c])).collect();
            outer.encode(&curried)
        })
        .collect()
}
