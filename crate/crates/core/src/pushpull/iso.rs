use std::collections::HashMap;

use super::family::{fiber_offsets, fibers, pullback_ls, pushforward_ls, tensor, FamilyMap, VectorFamily};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A commuting square of finite sets
///
/// ```text
///   P --g'--> Z
///   |f'       |f
///   v         v
///   X --g---> Y
/// ```
///
/// checked to be a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackSquare {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub f_prime: Vec<usize>,
    pub g_prime: Vec<usize>,
    pub y_size: usize,
}

impl PullbackSquare {
    pub fn new(f: Vec<usize>, g: Vec<usize>, f_prime: Vec<usize>, g_prime: Vec<usize>, y_size: usize) -> Result<Self> {
        let sq = PullbackSquare { f, g, f_prime, g_prime, y_size };
        sq.check()?;
        Ok(sq)
    }

    /// `P = {(z, x) | f z = g x}` in lexicographic order.
    pub fn canonical(f: Vec<usize>, g: Vec<usize>, y_size: usize) -> Result<Self> {
        let mut fp = Vec::new();
        let mut gp = Vec::new();
        for (z, &fz) in f.iter().enumerate() {
            for (x, &gx) in g.iter().enumerate() {
                if fz == gx {
                    gp.push(z);
                    fp.push(x);
                }
            }
        }
        PullbackSquare::new(f, g, fp, gp, y_size)
    }

    fn check(&self) -> Result<()> {
        if self.f.iter().chain(&self.g).any(|&y| y >= self.y_size) {
            return Err(Error::InvalidMap("leg lands outside Y".into()));
        }
        if self.f_prime.len() != self.g_prime.len()
            || self.f_prime.iter().any(|&x| x >= self.g.len())
            || self.g_prime.iter().any(|&z| z >= self.f.len())
        {
            return Err(Error::InvalidMap("legs out of P do not fit X and Z".into()));
        }
        let mut seen = HashMap::new();
        for (p, (&x, &z)) in self.f_prime.iter().zip(&self.g_prime).enumerate() {
            if self.g[x] != self.f[z] {
                return Err(Error::NotAPullback(format!("square does not commute at {p}")));
            }
            if seen.insert((z, x), p).is_some() {
                return Err(Error::NotAPullback(format!("two points of P over ({z}, {x})")));
            }
        }
        let expected: usize =
            fibers(&self.g, self.y_size).iter().zip(fibers(&self.f, self.y_size)).map(|(a, b)| a.len() * b.len()).sum();
        if seen.len() != expected {
            return Err(Error::NotAPullback("P misses part of the fibre product".into()));
        }
        Ok(())
    }
}

/// `f*g_*V ≅ g'_*f'*V` on `Z`: each summand `V_x` is moved to the slot of
/// the unique point of `P` over `(z, x)`.
pub fn base_change(sq: &PullbackSquare, v: &VectorFamily) -> Result<FamilyMap> {
    let pushed = pushforward_ls(&sq.g, sq.y_size, v)?;
    let source = pullback_ls(&sq.f, &pushed)?;
    let pulled = pullback_ls(&sq.f_prime, v)?;
    let z_size = sq.f.len();
    let target = pushforward_ls(&sq.g_prime, z_size, &pulled)?;
    let src_off = fiber_offsets(&sq.g, sq.y_size, v);
    let tgt_off = fiber_offsets(&sq.g_prime, z_size, &pulled);
    let mut blocks: Vec<Matrix> = source.dims.iter().map(|&d| Matrix::zeros(d, d)).collect();
    let mut assignment: Vec<Vec<usize>> = source.dims.iter().map(|&d| vec![usize::MAX; d]).collect();
    for (p, (&x, &z)) in sq.f_prime.iter().zip(&sq.g_prime).enumerate() {
        for i in 0..v.dims[x] {
            assignment[z][src_off[x] + i] = tgt_off[p] + i;
        }
    }
    for (z, a) in assignment.iter().enumerate() {
        blocks[z] = Matrix::from_assignment(a.len(), a.len(), a);
    }
    FamilyMap::new(source, target, blocks)
}

/// `f_*A ⊗ B ≅ f_*(A ⊗ f*B)`, basis vector `(x, a) ⊗ b ↦ (x, a ⊗ b)`.
pub fn projection_iso(f: &[usize], a: &VectorFamily, b: &VectorFamily) -> Result<FamilyMap> {
    let n = b.base();
    let source = tensor(&pushforward_ls(f, n, a)?, b)?;
    let ab = tensor(a, &pullback_ls(f, b)?)?;
    let target = pushforward_ls(f, n, &ab)?;
    let a_off = fiber_offsets(f, n, a);
    let ab_off = fiber_offsets(f, n, &ab);
    let mut assignment: Vec<Vec<usize>> = source.dims.iter().map(|&d| vec![usize::MAX; d]).collect();
    for (x, &y) in f.iter().enumerate() {
        let db = b.dims[y];
        for i in 0..a.dims[x] {
            for k in 0..db {
                assignment[y][(a_off[x] + i) * db + k] = ab_off[x] + i * db + k;
            }
        }
    }
    let blocks = assignment.iter().map(|a| Matrix::from_assignment(a.len(), a.len(), a)).collect();
    FamilyMap::new(source, target, blocks)
}

/// `(g∘f)_*V ≅ g_*f_*V`, regrouping each fiber of `g∘f` by its image under `f`.
pub fn pushforward_composite_iso(
    f: &[usize],
    f_target: usize,
    g: &[usize],
    g_target: usize,
    v: &VectorFamily,
) -> Result<FamilyMap> {
    let gf: Vec<usize> = f.iter().map(|&y| g[y]).collect();
    let source = pushforward_ls(&gf, g_target, v)?;
    let inner = pushforward_ls(f, f_target, v)?;
    let target = pushforward_ls(g, g_target, &inner)?;
    let src_off = fiber_offsets(&gf, g_target, v);
    let in_off = fiber_offsets(f, f_target, v);
    let out_off = fiber_offsets(g, g_target, &inner);
    let mut assignment: Vec<Vec<usize>> = source.dims.iter().map(|&d| vec![usize::MAX; d]).collect();
    for (x, &y) in f.iter().enumerate() {
        for i in 0..v.dims[x] {
            assignment[g[y]][src_off[x] + i] = out_off[y] + in_off[x] + i;
        }
    }
    let blocks = assignment.iter().map(|a| Matrix::from_assignment(a.len(), a.len(), a)).collect();
    FamilyMap::new(source, target, blocks)
}

/// `f_*V ≅ (f⁻¹)*V` for a bijection `f`.
pub fn pushforward_along_bijection(f: &[usize], v: &VectorFamily) -> Result<FamilyMap> {
    let n = f.len();
    let mut inv = vec![usize::MAX; n];
    for (x, &y) in f.iter().enumerate() {
        if y >= n || inv[y] != usize::MAX {
            return Err(Error::InvalidMap("not a bijection".into()));
        }
        inv[y] = x;
    }
    let source = pushforward_ls(f, n, v)?;
    let target = pullback_ls(&inv, v)?;
    FamilyMap::new(source, target.clone(), target.dims.iter().map(|&d| Matrix::identity(d)).collect())
}
