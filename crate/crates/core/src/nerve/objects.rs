use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::grid::{grids, Grid, GridSet};
use super::labelled::{labelled_limit, LabelledLimit};
use super::monoidal::FinSymMonCat;
use super::Bisimplicial;
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::simplex::{interval_pullback, MonotoneMap, PointedMap};

pub const GRID_LIMIT: usize = 200_000;

/// `□²(N C)`: `X_{u,v}` is the set of functors `[u] × [v] -> C`.
pub struct SquareNerve {
    pub category: FinCategory,
    cache: RefCell<HashMap<(usize, usize), Rc<GridSet>>>,
}

impl SquareNerve {
    pub fn new(category: FinCategory) -> Self {
        SquareNerve { category, cache: RefCell::new(HashMap::new()) }
    }

    pub fn cells(&self, u: usize, v: usize) -> Result<Rc<GridSet>> {
        if let Some(s) = self.cache.borrow().get(&(u, v)) {
            return Ok(s.clone());
        }
        let set = Rc::new(GridSet::new(grids(&self.category, &[u, v], GRID_LIMIT)?));
        self.cache.borrow_mut().insert((u, v), set.clone());
        Ok(set)
    }
}

impl Bisimplicial for SquareNerve {
    fn size(&self, u: usize, v: usize) -> Result<usize> {
        Ok(self.cells(u, v)?.len())
    }

    fn act(&self, alpha: &MonotoneMap, beta: &MonotoneMap, x: usize) -> usize {
        let src = self.cells(alpha.target(), beta.target()).expect("source cells");
        let dst = self.cells(alpha.source(), beta.source()).expect("target cells");
        dst.position(&src.grids[x].reindex(&self.category, &[alpha, beta]))
    }
}

/// The bisimplicial set behind `𝒬_{t,k,n,•}`: `X_{u,v}` is the set of
/// `(t k) u`-tuples of functors `[v] × [n] -> Q`. The first variable acts
/// through the interval form of the underlying-monoid map smashed with
/// `⟨t k⟩`, tensoring grids over preimages; the second by reindexing.
pub struct CqObject {
    pub q: FinSymMonCat,
    pub width: usize,
    pub n: usize,
    pub max_size: usize,
    cache: RefCell<HashMap<usize, Rc<GridSet>>>,
}

impl CqObject {
    pub fn new(q: FinSymMonCat, t: usize, k: usize, n: usize, max_size: usize) -> Self {
        CqObject { q, width: t * k, n, max_size, cache: RefCell::new(HashMap::new()) }
    }

    /// Functors `[v] × [n] -> Q`.
    pub fn column_grids(&self, v: usize) -> Result<Rc<GridSet>> {
        if let Some(s) = self.cache.borrow().get(&v) {
            return Ok(s.clone());
        }
        let set = Rc::new(GridSet::new(grids(&self.q.category, &[v, self.n], GRID_LIMIT)?));
        self.cache.borrow_mut().insert(v, set.clone());
        Ok(set)
    }

    pub fn slots(&self, u: usize) -> usize {
        self.width * u
    }

    pub fn decode(&self, u: usize, v: usize, mut x: usize) -> Vec<Grid> {
        let set = self.column_grids(v).expect("grids");
        (0..self.slots(u))
            .map(|_| {
                let g = set.grids[x % set.len()].clone();
                x /= set.len();
                g
            })
            .collect()
    }

    pub fn encode(&self, v: usize, tuple: &[Grid]) -> usize {
        let set = self.column_grids(v).expect("grids");
        tuple.iter().rev().fold(0, |acc, g| acc * set.len() + set.position(g))
    }

    pub fn tensor(&self, a: &Grid, b: &Grid) -> Grid {
        a.zip_with(b, |x, y| self.q.tensor_object(x, y), |f, g| self.q.tensor_morphism(f, g))
    }

    pub fn unit_grid(&self, v: usize) -> Grid {
        Grid::constant(&self.q.category, &[v, self.n], self.q.unit)
    }

    /// The pointed map on tuple slots induced by `α`.
    pub fn slot_map(&self, alpha: &MonotoneMap) -> PointedMap {
        interval_pullback(alpha).smash(&PointedMap::identity(self.width))
    }
}

impl Bisimplicial for CqObject {
    fn size(&self, u: usize, v: usize) -> Result<usize> {
        let g = self.column_grids(v)?.len();
        let s = u32::try_from(self.slots(u)).map_err(|_| Error::BoundExceeded("too many slots".into()))?;
        match g.checked_pow(s) {
            Some(n) if n <= self.max_size => Ok(n),
            _ => Err(Error::BoundExceeded(format!("|X_{{{u},{v}}}| = {g}^{s} above {}", self.max_size))),
        }
    }

    fn act(&self, alpha: &MonotoneMap, beta: &MonotoneMap, x: usize) -> usize {
        let (u, v) = (alpha.target(), beta.target());
        let id_n = MonotoneMap::identity(self.n);
        let tuple: Vec<Grid> =
            self.decode(u, v, x).iter().map(|g| g.reindex(&self.q.category, &[beta, &id_n])).collect();
        let psi = self.slot_map(alpha);
        let out: Vec<Grid> = (1..=psi.target())
            .map(|j| {
                psi.preimage(j).iter().fold(self.unit_grid(beta.source()), |acc, &i| self.tensor(&acc, &tuple[i - 1]))
            })
            .collect();
        self.encode(beta.source(), &out)
    }
}

/// `𝒬_{t,k,n,l}` as the labelled limit of the pipeline object.
pub fn build_cq(
    q: &FinSymMonCat,
    t: usize,
    k: usize,
    n: usize,
    l: usize,
    max_size: usize,
) -> Result<(CqObject, LabelledLimit)> {
    let x = CqObject::new(q.clone(), t, k, n, max_size);
    let lim = labelled_limit(&x, l)?;
    Ok((x, lim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_square_count() {
        let x = SquareNerve::new(FinCategory::walking_arrow());
        assert_eq!(x.size(1, 1).unwrap(), 6);
        assert_eq!(x.size(0, 0).unwrap(), 2);
    }

    #[test]
    fn cq_object_sizes() {
        let x = CqObject::new(FinSymMonCat::truncated_sum(1), 1, 1, 1, 1000);
        // chains [1] -> {0 < 1}: 3
        assert_eq!(x.size(1, 0).unwrap(), 3);
        assert_eq!(x.size(2, 0).unwrap(), 9);
        assert_eq!(x.size(0, 3).unwrap(), 1);
    }

    #[test]
    fn cq_inner_face_tensors() {
        let x = CqObject::new(FinSymMonCat::truncated_sum(2), 1, 1, 0, 1000);
        let d1 = MonotoneMap::new(1, 2, vec![0, 2]).unwrap();
        let id0 = MonotoneMap::identity(0);
        // objects 1 and 1 tensor to 2
        let pair = x.encode(0, &[Grid::constant(&x.q.category, &[0, 0], 1), Grid::constant(&x.q.category, &[0, 0], 1)]);
        let image = x.decode(1, 0, x.act(&d1, &id0, pair));
        assert_eq!(image[0].objects, vec![2]);
    }
}
