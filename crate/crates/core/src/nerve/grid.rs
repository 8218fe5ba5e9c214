use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::simplex::MonotoneMap;

/// A functor `[k_1] × … × [k_r] -> C`, given by an object per point and a
/// morphism per unit step. Points are indexed in mixed radix with the first
/// axis most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    pub dims: Vec<usize>,
    pub objects: Vec<usize>,
    /// `steps[p * r + axis]` is the morphism from `p` to `p + e_axis`, or
    /// `usize::MAX` on the boundary.
    pub steps: Vec<usize>,
}

pub const NO_STEP: usize = usize::MAX;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * (dims[i + 1] + 1);
    }
    s
}

fn coords(dims: &[usize], mut p: usize) -> Vec<usize> {
    let mut c = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        c[i] = p % (dims[i] + 1);
        p /= dims[i] + 1;
    }
    c
}

pub fn point_count(dims: &[usize]) -> usize {
    dims.iter().map(|&k| k + 1).product()
}

impl Grid {
    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn point(&self, coords: &[usize]) -> usize {
        coords.iter().zip(strides(&self.dims)).map(|(c, s)| c * s).sum()
    }

    pub fn object_at(&self, coords: &[usize]) -> usize {
        self.objects[self.point(coords)]
    }

    pub fn step(&self, coords: &[usize], axis: usize) -> usize {
        self.steps[self.point(coords) * self.rank() + axis]
    }

    /// The morphism between two comparable points, composing unit steps
    /// axis by axis.
    pub fn morphism_between(&self, cat: &FinCategory, from: &[usize], to: &[usize]) -> usize {
        let mut cur = from.to_vec();
        let mut f = cat.identity(self.object_at(from));
        for axis in 0..self.rank() {
            while cur[axis] < to[axis] {
                let s = self.step(&cur, axis);
                f = cat.compose(s, f).expect("composable steps");
                cur[axis] += 1;
            }
        }
        f
    }

    /// Precomposition with a product of monotone maps, one per axis, each
    /// `[k'_i] -> [k_i]`.
    pub fn reindex(&self, cat: &FinCategory, maps: &[&MonotoneMap]) -> Grid {
        let dims: Vec<usize> = maps.iter().map(|m| m.source()).collect();
        let r = dims.len();
        let n = point_count(&dims);
        let mut objects = Vec::with_capacity(n);
        let mut steps = vec![NO_STEP; n * r];
        for p in 0..n {
            let c = coords(&dims, p);
            let image: Vec<usize> = c.iter().zip(maps).map(|(&x, m)| m.apply(x)).collect();
            objects.push(self.object_at(&image));
            for axis in 0..r {
                if c[axis] < dims[axis] {
                    let mut next = image.clone();
                    next[axis] = maps[axis].apply(c[axis] + 1);
                    steps[p * r + axis] = self.morphism_between(cat, &image, &next);
                }
            }
        }
        Grid { dims, objects, steps }
    }

    /// Pointwise application of a functor given on objects and morphisms of
    /// a pair of grids with the same shape (used for tensoring).
    pub fn zip_with(
        &self,
        other: &Grid,
        obj: impl Fn(usize, usize) -> usize,
        mor: impl Fn(usize, usize) -> usize,
    ) -> Grid {
        assert_eq!(self.dims, other.dims);
        Grid {
            dims: self.dims.clone(),
            objects: self.objects.iter().zip(&other.objects).map(|(&a, &b)| obj(a, b)).collect(),
            steps: self
                .steps
                .iter()
                .zip(&other.steps)
                .map(|(&a, &b)| if a == NO_STEP { NO_STEP } else { mor(a, b) })
                .collect(),
        }
    }

    pub fn constant(cat: &FinCategory, dims: &[usize], object: usize) -> Grid {
        let n = point_count(dims);
        let r = dims.len();
        let mut steps = vec![NO_STEP; n * r];
        for p in 0..n {
            let c = coords(dims, p);
            for axis in 0..r {
                if c[axis] < dims[axis] {
                    steps[p * r + axis] = cat.identity(object);
                }
            }
        }
        Grid { dims: dims.to_vec(), objects: vec![object; n], steps }
    }
}

/// All functors `[k_1] × … × [k_r] -> C`, sorted.
pub fn grids(cat: &FinCategory, dims: &[usize], limit: usize) -> Result<Vec<Grid>> {
    let n = point_count(dims);
    let r = dims.len();
    let st = strides(dims);
    let mut out = Vec::new();
    let mut objects = vec![0usize; n];
    let mut steps = vec![NO_STEP; n * r];
    let mut ctx = GridSearch { cat, dims, st: &st, n, r, limit, out: &mut out };
    ctx.go(0, &mut objects, &mut steps)?;
    out.sort();
    Ok(out)
}

struct GridSearch<'a> {
    cat: &'a FinCategory,
    dims: &'a [usize],
    st: &'a [usize],
    n: usize,
    r: usize,
    limit: usize,
    out: &'a mut Vec<Grid>,
}

impl GridSearch<'_> {
    fn go(&mut self, p: usize, objects: &mut Vec<usize>, steps: &mut Vec<usize>) -> Result<()> {
        if p == self.n {
            if self.out.len() >= self.limit {
                return Err(Error::BoundExceeded(format!("more than {} grids", self.limit)));
            }
            self.out.push(Grid { dims: self.dims.to_vec(), objects: objects.clone(), steps: steps.clone() });
            return Ok(());
        }
        let c = coords(self.dims, p);
        let incoming: Vec<usize> = (0..self.r).filter(|&a| c[a] > 0).collect();
        if incoming.is_empty() {
            for o in 0..self.cat.object_count() {
                objects[p] = o;
                self.go(p + 1, objects, steps)?;
            }
            return Ok(());
        }
        let first = incoming[0];
        let q = p - self.st[first];
        let candidates: Vec<usize> = self.cat.outgoing(objects[q]).to_vec();
        self.choose(p, &incoming, 0, None, &candidates, objects, steps)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        p: usize,
        incoming: &[usize],
        k: usize,
        target: Option<usize>,
        first_candidates: &[usize],
        objects: &mut Vec<usize>,
        steps: &mut Vec<usize>,
    ) -> Result<()> {
        if k == incoming.len() {
            objects[p] = target.expect("some incoming step");
            // unit squares with top corner p
            for (i, &a) in incoming.iter().enumerate() {
                for &b in &incoming[i + 1..] {
                    let pa = p - self.st[a];
                    let pb = p - self.st[b];
                    let pab = pa - self.st[b];
                    let via_a = self.cat.compose(steps[pa * self.r + a], steps[pab * self.r + b]);
                    let via_b = self.cat.compose(steps[pb * self.r + b], steps[pab * self.r + a]);
                    if via_a != via_b {
                        return Ok(());
                    }
                }
            }
            return self.go(p + 1, objects, steps);
        }
        let axis = incoming[k];
        let q = p - self.st[axis];
        let options: Vec<usize> =
            if k == 0 { first_candidates.to_vec() } else { self.cat.hom(objects[q], target.expect("target fixed")) };
        for f in options {
            steps[q * self.r + axis] = f;
            let t = self.cat.morphism(f).dst;
            self.choose(p, incoming, k + 1, Some(t), first_candidates, objects, steps)?;
        }
        steps[q * self.r + axis] = NO_STEP;
        Ok(())
    }
}

/// `k`-simplices of the nerve of `C` as lists of composable morphisms (an
/// object for `k = 0`).
pub fn nerve_chains(cat: &FinCategory, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return (0..cat.object_count()).map(|o| vec![cat.identity(o)]).collect();
    }
    let mut out: Vec<Vec<usize>> = (0..cat.morphism_count()).map(|f| vec![f]).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for chain in &out {
            let last = cat.morphism(*chain.last().expect("nonempty")).dst;
            for &g in cat.outgoing(last) {
                let mut c = chain.clone();
                c.push(g);
                next.push(c);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// `□^n(N C)_{k_1..k_n}` as the set of functors from the product of chains.
pub fn square_n(cat: &FinCategory, ks: &[usize], limit: usize) -> Result<Vec<Grid>> {
    grids(cat, ks, limit)
}

/// An indexed family of grids of one shape.
#[derive(Clone, Debug)]
pub struct GridSet {
    pub grids: Vec<Grid>,
    index: HashMap<Grid, usize>,
}

impl GridSet {
    pub fn new(grids: Vec<Grid>) -> Self {
        let index = grids.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        GridSet { grids, index }
    }

    pub fn len(&self) -> usize {
        self.grids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grids.is_empty()
    }

    pub fn position(&self, g: &Grid) -> usize {
        self.index[g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_squares() {
        let c = FinCategory::walking_arrow();
        assert_eq!(grids(&c, &[1, 1], 1000).unwrap().len(), 6);
        assert_eq!(grids(&c, &[2], 1000).unwrap().len(), 4);
        assert_eq!(nerve_chains(&c, 2).len(), 4);
    }

    #[test]
    fn reindex_along_identity() {
        let c = FinCategory::chain(2);
        let id1 = MonotoneMap::identity(1);
        for g in grids(&c, &[1, 1], 1000).unwrap() {
            assert_eq!(g.reindex(&c, &[&id1, &id1]), g);
        }
    }

    #[test]
    fn face_of_a_square_is_its_column() {
        let c = FinCategory::chain(2);
        let id1 = MonotoneMap::identity(1);
        let top = MonotoneMap::new(0, 1, vec![1]).unwrap();
        for g in grids(&c, &[1, 1], 1000).unwrap() {
            let col = g.reindex(&c, &[&id1, &top]);
            assert_eq!(col.objects, vec![g.object_at(&[0, 1]), g.object_at(&[1, 1])]);
        }
    }
}
