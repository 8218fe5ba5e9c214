use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Morphism};
use crate::simplex::FinPoset;

/// A finite strict symmetric monoidal category whose symmetry is the
/// identity: the tensor is strictly associative, unital and commutative on
/// objects and morphisms.
#[derive(Clone, Debug)]
pub struct FinSymMonCat {
    pub category: FinCategory,
    pub tensor_objects: Vec<Vec<usize>>,
    pub tensor_morphisms: Vec<Vec<usize>>,
    pub unit: usize,
}

impl FinSymMonCat {
    pub fn new(
        category: FinCategory,
        tensor_objects: Vec<Vec<usize>>,
        tensor_morphisms: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self> {
        let q = FinSymMonCat { category, tensor_objects, tensor_morphisms, unit };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.category;
        let (n, m) = (c.object_count(), c.morphism_count());
        let bad = |s: &str| Err(Error::NotAFunctor(s.to_string()));
        if self.tensor_objects.len() != n || self.tensor_objects.iter().any(|r| r.len() != n) {
            return bad("object tensor table has the wrong shape");
        }
        if self.tensor_morphisms.len() != m || self.tensor_morphisms.iter().any(|r| r.len() != m) {
            return bad("morphism tensor table has the wrong shape");
        }
        if self.unit >= n {
            return bad("unit out of range");
        }
        let to = &self.tensor_objects;
        let tm = &self.tensor_morphisms;
        for f in 0..m {
            for g in 0..m {
                let (mf, mg) = (c.morphism(f), c.morphism(g));
                if c.morphism(tm[f][g]) != (Morphism { src: to[mf.src][mg.src], dst: to[mf.dst][mg.dst] }) {
                    return bad("tensor of morphisms mistyped");
                }
                if tm[f][g] != tm[g][f] {
                    return bad("tensor not strictly commutative");
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if tm[c.identity(a)][c.identity(b)] != c.identity(to[a][b]) {
                    return bad("tensor does not preserve identities");
                }
            }
        }
        // interchange: (g ∘ f) ⊗ (g' ∘ f') = (g ⊗ g') ∘ (f ⊗ f')
        let triples = c.composition_triples();
        for &(g, f, h) in &triples {
            for &(g2, f2, h2) in &triples {
                if c.compose(tm[g][g2], tm[f][f2]) != Some(tm[h][h2]) {
                    return bad("tensor does not preserve composition");
                }
            }
        }
        for f in 0..m {
            if tm[f][c.identity(self.unit)] != f {
                return bad("unit law fails");
            }
            for g in 0..m {
                for h in 0..m {
                    if tm[tm[f][g]][h] != tm[f][tm[g][h]] {
                        return bad("associativity fails");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.category.object_count()
    }

    pub fn tensor_object(&self, a: usize, b: usize) -> usize {
        self.tensor_objects[a][b]
    }

    pub fn tensor_morphism(&self, f: usize, g: usize) -> usize {
        self.tensor_morphisms[f][g]
    }

    /// `{0 < 1 < … < k}` with truncated addition `min(a + b, k)`.
    pub fn truncated_sum(k: usize) -> Self {
        Self::monotone_poset(k + 1, |a, b| (a + b).min(k), 0)
    }

    /// `{0 < 1 < … < k}` with `max`, unit `0`.
    pub fn max_chain(k: usize) -> Self {
        Self::monotone_poset(k + 1, |a, b| a.max(b), 0)
    }

    /// A chain with a monotone commutative monoid operation.
    pub fn monotone_poset(size: usize, op: impl Fn(usize, usize) -> usize, unit: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..size).map(|i| (i - 1, i)).collect();
        let poset = FinPoset::from_edges(size, &edges).expect("chain");
        let category = FinCategory::from_poset(&poset);
        let to: Vec<Vec<usize>> = (0..size).map(|a| (0..size).map(|b| op(a, b)).collect()).collect();
        let tm = (0..category.morphism_count())
            .map(|f| {
                (0..category.morphism_count())
                    .map(|g| {
                        let (mf, mg) = (category.morphism(f), category.morphism(g));
                        category.hom(to[mf.src][mg.src], to[mf.dst][mg.dst])[0]
                    })
                    .collect()
            })
            .collect();
        FinSymMonCat::new(category, to, tm, unit).expect("monotone commutative monoid")
    }

    /// A commutative monoid, discrete as a category.
    pub fn discrete_monoid(mult: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = mult.len();
        let category = FinCategory::discrete(n);
        FinSymMonCat::new(category, mult.to_vec(), mult.to_vec(), unit)
    }

    /// The one-object category of a commutative monoid, with tensor the
    /// multiplication. Element `0` must be the unit.
    pub fn delooping(mult: &[Vec<usize>]) -> Result<Self> {
        let category = FinCategory::monoid(mult)?;
        FinSymMonCat::new(category, vec![vec![0]], mult.to_vec(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_validate() {
        FinSymMonCat::truncated_sum(2).validate().unwrap();
        FinSymMonCat::max_chain(3).validate().unwrap();
        FinSymMonCat::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        FinSymMonCat::delooping(&[vec![0, 1], vec![1, 0]]).unwrap();
    }

    #[test]
    fn non_monotone_operation_rejected() {
        // a ⊗ b = b - a mod 2 on the chain 0 < 1 is not a functor
        let poset = FinPoset::from_edges(2, &[(0, 1)]).unwrap();
        let category = FinCategory::from_poset(&poset);
        let to = vec![vec![0, 1], vec![1, 0]];
        let m = category.morphism_count();
        let tm = vec![vec![0; m]; m];
        assert!(FinSymMonCat::new(category, to, tm, 0).is_err());
    }
}
