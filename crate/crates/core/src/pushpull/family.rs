use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Finite-dimensional rational vector spaces indexed by the points `0..base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorFamily {
    pub dims: Vec<usize>,
}

impl VectorFamily {
    pub fn new(dims: Vec<usize>) -> Self {
        VectorFamily { dims }
    }

    pub fn zero(base: usize) -> Self {
        VectorFamily { dims: vec![0; base] }
    }

    /// The tensor unit: one dimension at every point.
    pub fn unit(base: usize) -> Self {
        VectorFamily { dims: vec![1; base] }
    }

    pub fn base(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// `fibers(f, n)[y]` lists the preimage of `y` in increasing order.
pub fn fibers(f: &[usize], target: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); target];
    for (x, &y) in f.iter().enumerate() {
        out[y].push(x);
    }
    out
}

fn check_map(f: &[usize], target: usize) -> Result<()> {
    if let Some(&y) = f.iter().find(|&&y| y >= target) {
        return Err(Error::InvalidMap(format!("value {y} outside a base of size {target}")));
    }
    Ok(())
}

/// `(f*V)_x = V_{f(x)}`.
pub fn pullback_ls(f: &[usize], v: &VectorFamily) -> Result<VectorFamily> {
    check_map(f, v.base())?;
    Ok(VectorFamily { dims: f.iter().map(|&y| v.dims[y]).collect() })
}

/// `(f_*V)_y = ⊕_{x ∈ f⁻¹(y)} V_x`, summands in increasing `x`.
pub fn pushforward_ls(f: &[usize], target: usize, v: &VectorFamily) -> Result<VectorFamily> {
    check_map(f, target)?;
    if f.len() != v.base() {
        return Err(Error::SizeMismatch(format!("map has domain {} but family has base {}", f.len(), v.base())));
    }
    let mut dims = vec![0; target];
    for (x, &y) in f.iter().enumerate() {
        dims[y] += v.dims[x];
    }
    Ok(VectorFamily { dims })
}

/// Pointwise tensor product; bases are ordered as in `Matrix::kron`.
pub fn tensor(a: &VectorFamily, b: &VectorFamily) -> Result<VectorFamily> {
    if a.base() != b.base() {
        return Err(Error::SizeMismatch("tensor factors live on different bases".into()));
    }
    Ok(VectorFamily { dims: a.dims.iter().zip(&b.dims).map(|(x, y)| x * y).collect() })
}

/// Start of the summand `V_x` inside `(f_*V)_{f(x)}`.
pub(crate) fn fiber_offsets(f: &[usize], target: usize, v: &VectorFamily) -> Vec<usize> {
    let mut next = vec![0; target];
    f.iter()
        .enumerate()
        .map(|(x, &y)| {
            let o = next[y];
            next[y] += v.dims[x];
            o
        })
        .collect()
}

/// One matrix per point, from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMap {
    pub source: VectorFamily,
    pub target: VectorFamily,
    pub blocks: Vec<Matrix>,
}

impl FamilyMap {
    pub fn new(source: VectorFamily, target: VectorFamily, blocks: Vec<Matrix>) -> Result<Self> {
        if source.base() != target.base() || blocks.len() != source.base() {
            return Err(Error::SizeMismatch("source, target and blocks must share a base".into()));
        }
        for (x, b) in blocks.iter().enumerate() {
            if b.rows() != target.dims[x] || b.cols() != source.dims[x] {
                return Err(Error::DimensionMismatch(format!(
                    "block at {x} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dims[x],
                    source.dims[x]
                )));
            }
        }
        Ok(FamilyMap { source, target, blocks })
    }

    pub fn identity(v: &VectorFamily) -> Self {
        FamilyMap {
            source: v.clone(),
            target: v.clone(),
            blocks: v.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &VectorFamily, target: &VectorFamily) -> Result<Self> {
        let blocks = source.dims.iter().zip(&target.dims).map(|(&c, &r)| Matrix::zeros(r, c)).collect();
        FamilyMap::new(source.clone(), target.clone(), blocks)
    }

    pub fn base(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.blocks.iter().all(Matrix::is_identity)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<FamilyMap> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(FamilyMap { source: self.target.clone(), target: self.source.clone(), blocks })
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &FamilyMap, inner: &FamilyMap) -> Result<FamilyMap> {
    if inner.target != outer.source {
        return Err(Error::DimensionMismatch("composable maps need matching middle family".into()));
    }
    let blocks = outer.blocks.iter().zip(&inner.blocks).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
    Ok(FamilyMap { source: inner.source.clone(), target: outer.target.clone(), blocks })
}

/// Composes a chain given in application order.
pub fn compose_all(first: &FamilyMap, rest: &[FamilyMap]) -> Result<FamilyMap> {
    rest.iter().try_fold(first.clone(), |acc, m| compose(m, &acc))
}

pub fn pullback_map(f: &[usize], phi: &FamilyMap) -> Result<FamilyMap> {
    Ok(FamilyMap {
        source: pullback_ls(f, &phi.source)?,
        target: pullback_ls(f, &phi.target)?,
        blocks: f.iter().map(|&y| phi.blocks[y].clone()).collect(),
    })
}

/// Block-diagonal over each fiber.
pub fn pushforward_map(f: &[usize], target: usize, phi: &FamilyMap) -> Result<FamilyMap> {
    let source = pushforward_ls(f, target, &phi.source)?;
    let tgt = pushforward_ls(f, target, &phi.target)?;
    let blocks = fibers(f, target)
        .iter()
        .map(|fib| Matrix::block_diag(&fib.iter().map(|&x| phi.blocks[x].clone()).collect::<Vec<_>>()))
        .collect();
    Ok(FamilyMap { source, target: tgt, blocks })
}

pub fn tensor_map(phi: &FamilyMap, psi: &FamilyMap) -> Result<FamilyMap> {
    Ok(FamilyMap {
        source: tensor(&phi.source, &psi.source)?,
        target: tensor(&phi.target, &psi.target)?,
        blocks: phi.blocks.iter().zip(&psi.blocks).map(|(a, b)| a.kron(b)).collect(),
    })
}

/// The swap `V ⊗ W → W ⊗ V`.
pub fn symmetry(v: &VectorFamily, w: &VectorFamily) -> Result<FamilyMap> {
    let blocks = v
        .dims
        .iter()
        .zip(&w.dims)
        .map(|(&a, &b)| {
            let target: Vec<usize> = (0..a * b).map(|k| (k % b) * a + k / b).collect();
            Matrix::from_assignment(a * b, a * b, &target)
        })
        .collect();
    FamilyMap::new(tensor(v, w)?, tensor(w, v)?, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushforward_sums_fibers() {
        let v = VectorFamily::new(vec![2, 3]);
        assert_eq!(pushforward_ls(&[0, 0], 1, &v).unwrap().dims, vec![5]);
        assert_eq!(pushforward_ls(&[1, 1], 2, &v).unwrap().dims, vec![0, 5]);
        assert_eq!(pullback_ls(&[0, 0], &VectorFamily::new(vec![3])).unwrap().dims, vec![3, 3]);
    }

    #[test]
    fn symmetry_is_an_involution() {
        let v = VectorFamily::new(vec![2, 3]);
        let w = VectorFamily::new(vec![3, 1]);
        let s = compose(&symmetry(&w, &v).unwrap(), &symmetry(&v, &w).unwrap()).unwrap();
        assert!(s.is_identity());
    }
}
