use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::FinPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // (g, f) -> g ∘ f for dst(f) = src(g)
    table: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Builds and validates a category. `composition` lists `(g, f, g∘f)`.
    pub fn new(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let cat = Self::assemble(objects, morphisms, identities, composition)?;
        cat.validate()?;
        Ok(cat)
    }

    pub(crate) fn assemble(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: &[(usize, usize, usize)],
    ) -> Result<Self> {
        if identities.len() != objects {
            return Err(Error::NotACategory("one identity per object required".into()));
        }
        for m in &morphisms {
            if m.src >= objects || m.dst >= objects {
                return Err(Error::NotACategory(format!("morphism {m:?} out of range")));
            }
        }
        let mut table = HashMap::new();
        for &(g, f, h) in composition {
            if g >= morphisms.len() || f >= morphisms.len() || h >= morphisms.len() {
                return Err(Error::NotACategory(format!("composite ({g},{f},{h}) out of range")));
            }
            table.insert((g, f), h);
        }
        let mut outgoing = vec![Vec::new(); objects];
        let mut incoming = vec![Vec::new(); objects];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            incoming[m.dst].push(i);
        }
        Ok(FinCategory { objects, morphisms, identities, table, outgoing, incoming })
    }

    /// Checks identities, totality of the table, typing and associativity.
    pub fn validate(&self) -> Result<()> {
        for (a, &i) in self.identities.iter().enumerate() {
            if i >= self.morphisms.len() || self.morphisms[i] != (Morphism { src: a, dst: a }) {
                return Err(Error::NotACategory(format!("bad identity for object {a}")));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].dst] {
                let h = *self
                    .table
                    .get(&(g, f))
                    .ok_or_else(|| Error::NotACategory(format!("missing composite of {g} after {f}")))?;
                let expect = Morphism { src: self.morphisms[f].src, dst: self.morphisms[g].dst };
                if self.morphisms[h] != expect {
                    return Err(Error::NotACategory(format!("composite of {g} after {f} mistyped")));
                }
            }
            let m = self.morphisms[f];
            if self.table[&(self.identities[m.dst], f)] != f || self.table[&(f, self.identities[m.src])] != f {
                return Err(Error::NotACategory(format!("identity law fails at {f}")));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].dst] {
                for &h in &self.outgoing[self.morphisms[g].dst] {
                    let left = self.table[&(h, self.table[&(g, f)])];
                    let right = self.table[&(self.table[&(h, g)], f)];
                    if left != right {
                        return Err(Error::NotACategory(format!("associativity fails at ({h},{g},{f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset as a category; morphism `k` is `poset.all_arrows()[k]`.
    pub fn from_poset(poset: &FinPoset) -> Self {
        let arrows = poset.all_arrows();
        let index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let morphisms: Vec<Morphism> = arrows.iter().map(|&(a, b)| Morphism { src: a, dst: b }).collect();
        let identities = (0..poset.size()).map(|a| index[&(a, a)]).collect();
        let mut composition = Vec::new();
        for &(a, b) in &arrows {
            for c in poset.below(b) {
                composition.push((index[&(b, c)], index[&(a, b)], index[&(a, c)]));
            }
        }
        Self::assemble(poset.size(), morphisms, identities, &composition).expect("posets are categories")
    }

    pub fn discrete(k: usize) -> Self {
        let morphisms = (0..k).map(|a| Morphism { src: a, dst: a }).collect();
        let composition: Vec<_> = (0..k).map(|a| (a, a, a)).collect();
        Self::assemble(k, morphisms, (0..k).collect(), &composition).expect("discrete category")
    }

    /// The ordinal `[n]` as a category.
    pub fn chain(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_poset(&FinPoset::from_edges(n + 1, &edges).expect("chain"))
    }

    pub fn walking_arrow() -> Self {
        Self::chain(1)
    }

    /// A one-object category from a monoid multiplication table; element 0
    /// must be the unit.
    pub fn monoid(mult: &[Vec<usize>]) -> Result<Self> {
        let n = mult.len();
        let morphisms = vec![Morphism { src: 0, dst: 0 }; n];
        let mut composition = Vec::new();
        for g in 0..n {
            for f in 0..n {
                composition.push((g, f, mult[g][f]));
            }
        }
        Self::new(1, morphisms, vec![0], &composition)
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: usize) -> Morphism {
        self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table.get(&(g, f)).copied()
    }

    pub fn outgoing(&self, a: usize) -> &[usize] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, a: usize) -> &[usize] {
        &self.incoming[a]
    }

    /// Morphisms `a -> b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.outgoing[a].iter().copied().filter(|&f| self.morphisms[f].dst == b).collect()
    }

    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut t: Vec<_> = self.table.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
        t.sort_unstable();
        t
    }

    pub fn opposite(&self) -> FinCategory {
        let morphisms = self.morphisms.iter().map(|m| Morphism { src: m.dst, dst: m.src }).collect();
        let composition: Vec<_> = self.table.iter().map(|(&(g, f), &h)| (f, g, h)).collect();
        Self::assemble(self.objects, morphisms, self.identities.clone(), &composition).expect("opposite")
    }

    /// Adjoins a new initial object, returned as the last index.
    pub fn cone(&self) -> (FinCategory, usize) {
        let apex = self.objects;
        let mut morphisms = self.morphisms.clone();
        let base = morphisms.len();
        for a in 0..self.objects {
            morphisms.push(Morphism { src: apex, dst: a });
        }
        let apex_id = morphisms.len();
        morphisms.push(Morphism { src: apex, dst: apex });
        let mut identities = self.identities.clone();
        identities.push(apex_id);
        let mut composition = self.composition_triples();
        for (f, m) in self.morphisms.iter().enumerate() {
            composition.push((f, base + m.src, base + m.dst));
        }
        for a in 0..self.objects {
            composition.push((base + a, apex_id, base + a));
        }
        composition.push((apex_id, apex_id, apex_id));
        let cat = Self::assemble(self.objects + 1, morphisms, identities, &composition).expect("cone");
        (cat, apex)
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct Functor {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: &FinCategory,
        target: &FinCategory,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        if on_objects.len() != source.object_count() || on_morphisms.len() != source.morphism_count() {
            return Err(Error::NotAFunctor("wrong number of images".into()));
        }
        for (f, m) in source.morphisms().iter().enumerate() {
            let img = target.morphism(on_morphisms[f]);
            if img.src != on_objects[m.src] || img.dst != on_objects[m.dst] {
                return Err(Error::NotAFunctor(format!("morphism {f} mistyped")));
            }
        }
        for a in 0..source.object_count() {
            if on_morphisms[source.identity(a)] != target.identity(on_objects[a]) {
                return Err(Error::NotAFunctor(format!("identity of {a} not preserved")));
            }
        }
        for (g, f, h) in source.composition_triples() {
            if target.compose(on_morphisms[g], on_morphisms[f]) != Some(on_morphisms[h]) {
                return Err(Error::NotAFunctor(format!("composite ({g},{f}) not preserved")));
            }
        }
        Ok(Functor { on_objects, on_morphisms })
    }

    /// Inclusion of the full subcategory on `objects` (in the given order).
    pub fn full_inclusion(cat: &FinCategory, objects: &[usize]) -> (FinCategory, Functor) {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut kept = Vec::new();
        for (f, m) in cat.morphisms().iter().enumerate() {
            if pos.contains_key(&m.src) && pos.contains_key(&m.dst) {
                kept.push(f);
            }
        }
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms =
            kept.iter().map(|&f| Morphism { src: pos[&cat.morphism(f).src], dst: pos[&cat.morphism(f).dst] }).collect();
        let identities = objects.iter().map(|&o| new_index[&cat.identity(o)]).collect();
        let mut composition = Vec::new();
        for &f in &kept {
            for &g in cat.outgoing(cat.morphism(f).dst) {
                if let Some(&gi) = new_index.get(&g) {
                    let h = cat.compose(g, f).expect("composable");
                    composition.push((gi, new_index[&f], new_index[&h]));
                }
            }
        }
        let sub = FinCategory::assemble(objects.len(), morphisms, identities, &composition).expect("full subcategory");
        let functor = Functor { on_objects: objects.to_vec(), on_morphisms: kept };
        (sub, functor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_counts() {
        let c = FinCategory::chain(2);
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.morphism_count(), 6);
        c.validate().unwrap();
    }

    #[test]
    fn monoid_validation() {
        // {1, e} with e² = e
        assert!(FinCategory::monoid(&[vec![0, 1], vec![1, 1]]).is_ok());
        // non-associative table
        assert!(FinCategory::monoid(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]]).is_err());
    }

    #[test]
    fn cone_is_a_category() {
        let (c, apex) = FinCategory::discrete(2).cone();
        c.validate().unwrap();
        assert_eq!(apex, 2);
        assert_eq!(c.hom(apex, 0).len(), 1);
        c.opposite().validate().unwrap();
    }

    #[test]
    fn full_inclusion_is_a_functor() {
        let c = FinCategory::chain(3);
        let (sub, inc) = Functor::full_inclusion(&c, &[0, 2, 3]);
        sub.validate().unwrap();
        Functor::new(&sub, &c, inc.on_objects.clone(), inc.on_morphisms.clone()).unwrap();
    }
}
