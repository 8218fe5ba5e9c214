use serde::{Deserialize, Serialize};

use super::MonotoneMap;
use crate::error::{Error, Result};

/// A finite poset viewed as a category: `arrow(a, b)` means there is a
/// (unique) morphism `a -> b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    size: usize,
    arrows: Vec<bool>,
    hasse: Vec<(usize, usize)>,
}

impl FinPoset {
    /// Builds the poset generated by `edges` (reflexive-transitive closure).
    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut arrows = vec![false; size * size];
        for a in 0..size {
            arrows[a * size + a] = true;
        }
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(Error::InvalidArrow(format!("edge ({a},{b}) out of range")));
            }
            arrows[a * size + b] = true;
        }
        for k in 0..size {
            for a in 0..size {
                if !arrows[a * size + k] {
                    continue;
                }
                for b in 0..size {
                    if arrows[k * size + b] {
                        arrows[a * size + b] = true;
                    }
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                if a != b && arrows[a * size + b] && arrows[b * size + a] {
                    return Err(Error::NotACategory(format!("cycle through {a} and {b}")));
                }
            }
        }
        let mut hasse = Vec::new();
        for a in 0..size {
            for b in 0..size {
                if a == b || !arrows[a * size + b] {
                    continue;
                }
                let covered = (0..size).any(|c| c != a && c != b && arrows[a * size + c] && arrows[c * size + b]);
                if !covered {
                    hasse.push((a, b));
                }
            }
        }
        Ok(FinPoset { size, arrows, hasse })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arrow(&self, a: usize, b: usize) -> bool {
        self.arrows[a * self.size + b]
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// All arrows `a -> b` including identities, ordered by `(a, b)`.
    pub fn all_arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.arrow(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Objects reachable from `a`, including `a`.
    pub fn below(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.arrow(a, b)).collect()
    }

    /// Product poset; object `(c_0, .., c_r)` has index `Σ c_i * stride_i`
    /// with the first factor most significant.
    pub fn product(factors: &[&FinPoset]) -> FinPoset {
        let size: usize = factors.iter().map(|f| f.size).product();
        let coords = |mut x: usize| {
            let mut c = vec![0; factors.len()];
            for (i, f) in factors.iter().enumerate().rev() {
                c[i] = x % f.size;
                x /= f.size;
            }
            c
        };
        let all_coords: Vec<Vec<usize>> = (0..size).map(coords).collect();
        let mut arrows = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                arrows[a * size + b] =
                    factors.iter().enumerate().all(|(i, f)| f.arrow(all_coords[a][i], all_coords[b][i]));
            }
        }
        let mut hasse = Vec::new();
        for a in 0..size {
            for b in 0..size {
                let diff: Vec<usize> = (0..factors.len()).filter(|&i| all_coords[a][i] != all_coords[b][i]).collect();
                if diff.len() == 1 {
                    let i = diff[0];
                    if factors[i].hasse.contains(&(all_coords[a][i], all_coords[b][i])) {
                        hasse.push((a, b));
                    }
                }
            }
        }
        FinPoset { size, arrows, hasse }
    }
}

/// `Σ^n` with its `Λ^n` flags. Objects are inert maps ordered by source size,
/// then offset; arrows run from an interval to its subintervals.
#[derive(Clone, Debug)]
pub struct SpanPoset {
    pub level: usize,
    pub objects: Vec<MonotoneMap>,
    pub poset: FinPoset,
    pub lambda: Vec<bool>,
}

impl SpanPoset {
    pub fn index_of(&self, size: usize, offset: usize) -> Option<usize> {
        self.objects.iter().position(|o| o.source() == size && o.apply(0) == offset)
    }

    pub fn index_of_map(&self, phi: &MonotoneMap) -> Option<usize> {
        self.objects.iter().position(|o| o == phi)
    }
}

pub fn build_sigma(n: usize) -> SpanPoset {
    let mut objects = Vec::new();
    for size in 0..=n {
        for offset in 0..=n - size {
            objects.push(MonotoneMap::inert(size, offset, n).expect("interval inside [n]"));
        }
    }
    let idx = |size: usize, offset: usize| objects.iter().position(|o| o.source() == size && o.apply(0) == offset);
    let mut edges = Vec::new();
    for (a, o) in objects.iter().enumerate() {
        if o.source() >= 1 {
            let off = o.apply(0);
            edges.push((a, idx(o.source() - 1, off).expect("left face")));
            edges.push((a, idx(o.source() - 1, off + 1).expect("right face")));
        }
    }
    let poset = FinPoset::from_edges(objects.len(), &edges).expect("intervals form a poset");
    let lambda = objects.iter().map(|o| o.source() <= 1).collect();
    SpanPoset { level: n, objects, poset, lambda }
}

/// `Θ^n` with its `Ξ^n` flags. Objects are nonempty subsets of `[n]` as
/// sorted tuples, ordered by size then lexicographically; arrows run from a
/// set to its subsets.
#[derive(Clone, Debug)]
pub struct SubsetPoset {
    pub level: usize,
    pub objects: Vec<Vec<usize>>,
    pub poset: FinPoset,
    pub xi: Vec<bool>,
}

impl SubsetPoset {
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.objects.iter().position(|o| o == subset)
    }
}

pub fn build_theta(n: usize) -> SubsetPoset {
    let mut objects: Vec<Vec<usize>> =
        (1u32..(1 << (n + 1))).map(|mask| (0..=n).filter(|&i| mask & (1 << i) != 0).collect()).collect();
    objects.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut edges = Vec::new();
    for (a, s) in objects.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for skip in 0..s.len() {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            let b = objects.iter().position(|o| *o == sub).expect("subset present");
            edges.push((a, b));
        }
    }
    let poset = FinPoset::from_edges(objects.len(), &edges).expect("subsets form a poset");
    let xi = objects.iter().map(|o| o.len() == 1).collect();
    SubsetPoset { level: n, objects, poset, xi }
}

/// `α_*(φ)`: the inert map with offset `α(φ(0))` and length `α(φ(i)) - α(φ(0))`.
pub fn push_sigma(alpha: &MonotoneMap, phi: &MonotoneMap) -> Result<MonotoneMap> {
    if phi.target() != alpha.source() {
        return Err(Error::SizeMismatch(format!("φ lands in [{}], α starts at [{}]", phi.target(), alpha.source())));
    }
    if !phi.is_inert() {
        return Err(Error::InvalidMap(format!("{phi:?} is not inert")));
    }
    let lo = alpha.apply(phi.apply(0));
    let hi = alpha.apply(phi.apply(phi.source()));
    MonotoneMap::inert(hi - lo, lo, alpha.target())
}

/// `α_*(S)`: the set image.
pub fn push_theta(alpha: &MonotoneMap, subset: &[usize]) -> Result<Vec<usize>> {
    if let Some(&bad) = subset.iter().find(|&&s| s > alpha.source()) {
        return Err(Error::InvalidMap(format!("{bad} not in [{}]", alpha.source())));
    }
    let mut out: Vec<usize> = subset.iter().map(|&s| alpha.apply(s)).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct PosetDump {
    pub objects: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub flags: Vec<bool>,
}

impl SpanPoset {
    /// Objects are dumped as the value lists of the inert maps.
    pub fn dump(&self) -> PosetDump {
        PosetDump {
            objects: self.objects.iter().map(|o| o.values().to_vec()).collect(),
            edges: self.poset.hasse().to_vec(),
            flags: self.lambda.clone(),
        }
    }
}

impl SubsetPoset {
    pub fn dump(&self) -> PosetDump {
        PosetDump { objects: self.objects.clone(), edges: self.poset.hasse().to_vec(), flags: self.xi.clone() }
    }
}
