use super::family::{
    compose, fibers, pullback_ls, pullback_map, pushforward_ls, pushforward_map, FamilyMap, VectorFamily,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::one;

/// `η_W : W → f_*f*W`, stacked identities over each fiber.
pub fn unit_map(f: &[usize], w: &VectorFamily) -> Result<FamilyMap> {
    let n = w.base();
    let pulled = pullback_ls(f, w)?;
    let target = pushforward_ls(f, n, &pulled)?;
    let blocks = fibers(f, n)
        .iter()
        .enumerate()
        .map(|(y, fib)| {
            let d = w.dims[y];
            Matrix::vstack(d, &vec![Matrix::identity(d); fib.len()])
        })
        .collect::<Result<_>>()?;
    FamilyMap::new(w.clone(), target, blocks)
}

/// `ε_V : f*f_*V → V`, projection onto the summand of each point.
pub fn counit_map(f: &[usize], target: usize, v: &VectorFamily) -> Result<FamilyMap> {
    let pushed = pushforward_ls(f, target, v)?;
    let source = pullback_ls(f, &pushed)?;
    let offsets = super::family::fiber_offsets(f, target, v);
    let blocks = f
        .iter()
        .enumerate()
        .map(|(x, &y)| {
            let mut m = Matrix::zeros(v.dims[x], pushed.dims[y]);
            for i in 0..v.dims[x] {
                m.set(i, offsets[x] + i, one());
            }
            m
        })
        .collect();
    FamilyMap::new(source, v.clone(), blocks)
}

/// `Hom(f*W, V) → Hom(W, f_*V)`: stack the blocks over each fiber.
pub fn adjunct_right(f: &[usize], w: &VectorFamily, phi: &FamilyMap) -> Result<FamilyMap> {
    let n = w.base();
    if phi.source != pullback_ls(f, w)? {
        return Err(Error::DimensionMismatch("map does not start at f*W".into()));
    }
    let target = pushforward_ls(f, n, &phi.target)?;
    let blocks = fibers(f, n)
        .iter()
        .enumerate()
        .map(|(y, fib)| Matrix::vstack(w.dims[y], &fib.iter().map(|&x| phi.blocks[x].clone()).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    FamilyMap::new(w.clone(), target, blocks)
}

/// `Hom(W, f_*V) → Hom(f*W, V)`: the block rows of each point.
pub fn adjunct_left(f: &[usize], v: &VectorFamily, psi: &FamilyMap) -> Result<FamilyMap> {
    let n = psi.base();
    if psi.target != pushforward_ls(f, n, v)? {
        return Err(Error::DimensionMismatch("map does not land in f_*V".into()));
    }
    let offsets = super::family::fiber_offsets(f, n, v);
    let blocks = f.iter().enumerate().map(|(x, &y)| psi.blocks[y].row_block(offsets[x], v.dims[x])).collect();
    FamilyMap::new(pullback_ls(f, &psi.source)?, v.clone(), blocks)
}

/// Outcome of `check_adjunction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub left_dim: usize,
    pub right_dim: usize,
    pub round_trips: bool,
    pub triangles: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.left_dim == self.right_dim && self.round_trips && self.triangles
    }
}

fn elementary_maps(source: &VectorFamily, target: &VectorFamily) -> Vec<FamilyMap> {
    let mut out = Vec::new();
    for x in 0..source.base() {
        for i in 0..target.dims[x] {
            for j in 0..source.dims[x] {
                let mut blocks: Vec<Matrix> =
                    source.dims.iter().zip(&target.dims).map(|(&c, &r)| Matrix::zeros(r, c)).collect();
                blocks[x].set(i, j, one());
                out.push(FamilyMap { source: source.clone(), target: target.clone(), blocks });
            }
        }
    }
    out
}

/// Checks `Hom(f*W, V) ≅ Hom(W, f_*V)` on bases of both sides, plus the
/// triangle identities for `W` and `V`.
pub fn check_adjunction(f: &[usize], v: &VectorFamily, w: &VectorFamily) -> Result<AdjunctionReport> {
    let n = w.base();
    let fw = pullback_ls(f, w)?;
    let pv = pushforward_ls(f, n, v)?;
    let left = elementary_maps(&fw, v);
    let right = elementary_maps(w, &pv);
    let mut round_trips = true;
    for phi in &left {
        round_trips &= adjunct_left(f, v, &adjunct_right(f, w, phi)?)? == *phi;
    }
    for psi in &right {
        round_trips &= adjunct_right(f, w, &adjunct_left(f, v, psi)?)? == *psi;
    }
    // ε_{f*W} ∘ f*(η_W) = id and f_*(ε_V) ∘ η_{f_*V} = id.
    let first = compose(&counit_map(f, n, &fw)?, &pullback_map(f, &unit_map(f, w)?)?)?;
    let second = compose(&pushforward_map(f, n, &counit_map(f, n, v)?)?, &unit_map(f, &pv)?)?;
    Ok(AdjunctionReport {
        left_dim: left.len(),
        right_dim: right.len(),
        round_trips,
        triangles: first.is_identity() && second.is_identity(),
    })
}
