use std::fmt;

use serde::{Deserialize, Serialize};

use super::MonotoneMap;
use crate::error::{Error, Result};

/// A morphism `⟨source⟩ -> ⟨target⟩` of pointed finite sets. Entry `k - 1`
/// holds the image of `k`; `None` is the basepoint.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedMap {
    source: usize,
    target: usize,
    values: Vec<Option<usize>>,
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.map_or("*".to_string(), |k| k.to_string())).collect();
        write!(f, "<{}>-><{}>[{}]", self.source, self.target, vals.join(","))
    }
}

impl PointedMap {
    pub fn new(source: usize, target: usize, values: Vec<Option<usize>>) -> Result<Self> {
        if values.len() != source {
            return Err(Error::InvalidMap(format!("<{source}> needs {source} values, got {}", values.len())));
        }
        if values.iter().flatten().any(|&k| k == 0 || k > target) {
            return Err(Error::InvalidMap(format!("values {values:?} leave <{target}>")));
        }
        Ok(PointedMap { source, target, values })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap { source: n, target: n, values: (1..=n).map(Some).collect() }
    }

    /// The Segal map `τ_i : ⟨n⟩ -> ⟨1⟩`.
    pub fn segal(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidMap(format!("no Segal map τ_{i} out of <{n}>")));
        }
        Ok(PointedMap { source: n, target: 1, values: (1..=n).map(|k| (k == i).then_some(1)).collect() })
    }

    /// The active map `⟨p⟩ -> ⟨1⟩` sending every non-basepoint to 1.
    pub fn fold(p: usize) -> Self {
        PointedMap { source: p, target: 1, values: vec![Some(1); p] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    /// Image of `k`, with 0 standing for the basepoint on both sides.
    pub fn apply(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.values[k - 1].unwrap_or(0)
        }
    }

    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (1..=self.source).filter(|&k| self.values[k - 1] == Some(j)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PointedMap) -> Result<PointedMap> {
        if other.target != self.source {
            return Err(Error::SizeMismatch(format!(
                "cannot compose <{}>-><{}> after <{}>-><{}>",
                self.source, self.target, other.source, other.target
            )));
        }
        let values = other.values.iter().map(|v| v.and_then(|k| self.values[k - 1])).collect();
        Ok(PointedMap { source: other.source, target: self.target, values })
    }

    /// Every non-basepoint of the target has exactly one preimage.
    pub fn is_inert(&self) -> bool {
        (1..=self.target).all(|j| self.preimage(j).len() == 1)
    }

    /// `Some(i)` when this is the Segal map `τ_i`.
    pub fn segal_index(&self) -> Option<usize> {
        if self.target != 1 {
            return None;
        }
        let hits = self.preimage(1);
        (hits.len() == 1).then(|| hits[0])
    }

    /// Smash product, with `(a, b) ∈ ⟨m⟩ ∧ ⟨k⟩` encoded as `a + (b - 1) m`.
    pub fn smash(&self, other: &PointedMap) -> PointedMap {
        let (m, k) = (self.source, other.source);
        let (p, q) = (self.target, other.target);
        let mut values = vec![None; m * k];
        for b in 1..=k {
            for a in 1..=m {
                let fa = self.apply(a);
                let gb = other.apply(b);
                if fa != 0 && gb != 0 {
                    values[smash_index(m, a, b) - 1] = Some(smash_index(p, fa, gb));
                }
            }
        }
        PointedMap { source: m * k, target: p * q, values }
    }

    /// Wedge sum: the second summand is shifted past the first.
    pub fn wedge(&self, other: &PointedMap) -> PointedMap {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v.map(|j| j + self.target)));
        PointedMap { source: self.source + other.source, target: self.target + other.target, values }
    }

    /// All pointed maps `⟨source⟩ -> ⟨target⟩`.
    pub fn all(source: usize, target: usize) -> Vec<PointedMap> {
        let mut out = vec![Vec::new()];
        for _ in 0..source {
            let mut next = Vec::new();
            for prefix in &out {
                for v in 0..=target {
                    let mut p: Vec<Option<usize>> = prefix.clone();
                    p.push((v > 0).then_some(v));
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(|values| PointedMap { source, target, values }).collect()
    }
}

/// Position of `(a, b)` inside `⟨m⟩ ∧ ⟨k⟩ = ⟨mk⟩`.
pub fn smash_index(m: usize, a: usize, b: usize) -> usize {
    a + (b - 1) * m
}

/// The canonical bijection `(⟨m⟩ ∨ ⟨m'⟩) ∧ ⟨k⟩ -> (⟨m⟩ ∧ ⟨k⟩) ∨ (⟨m'⟩ ∧ ⟨k⟩)`.
pub fn distribute(m: usize, m2: usize, k: usize) -> PointedMap {
    let mut values = vec![None; (m + m2) * k];
    for b in 1..=k {
        for a in 1..=m + m2 {
            let img = if a <= m { smash_index(m, a, b) } else { m * k + smash_index(m2, a - m, b) };
            values[smash_index(m + m2, a, b) - 1] = Some(img);
        }
    }
    PointedMap { source: (m + m2) * k, target: (m + m2) * k, values }
}

/// The underlying-monoid map `u(φ) : ⟨n⟩ -> ⟨m⟩` for `φ : [m] -> [n]`,
/// `k ↦ min φ⁻¹(k)`. A minimum of 0 has no counterpart in `⟨m⟩` and is sent
/// to the basepoint.
pub fn underlying_monoid(phi: &MonotoneMap) -> PointedMap {
    let values = (1..=phi.target()).map(|k| phi.min_preimage(k).filter(|&s| s > 0)).collect();
    PointedMap { source: phi.target(), target: phi.source(), values }
}

/// The interval form of `u(φ)`: `k ↦ i` when `φ(i-1) < k ≤ φ(i)`. It agrees
/// with [`underlying_monoid`] on inert maps and is functorial on all of Δ.
pub fn interval_pullback(phi: &MonotoneMap) -> PointedMap {
    let v = phi.values();
    let values = (1..=phi.target()).map(|k| (1..=phi.source()).find(|&i| v[i - 1] < k && k <= v[i])).collect();
    PointedMap { source: phi.target(), target: phi.source(), values }
}

/// `κ_i = τ_i ∧ ⟨k⟩ : ⟨nk⟩ -> ⟨k⟩`.
pub fn smash_segal(k: usize, tau: &PointedMap) -> Result<PointedMap> {
    if tau.segal_index().is_none() {
        return Err(Error::NotSegal(format!("{tau:?}")));
    }
    Ok(tau.smash(&PointedMap::identity(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertness() {
        assert!(PointedMap::segal(2, 3).unwrap().is_inert());
        assert!(!PointedMap::fold(2).is_inert());
        let drop = PointedMap::new(2, 1, vec![None, None]).unwrap();
        assert!(!drop.is_inert());
        assert!(PointedMap::new(0, 0, vec![]).unwrap().is_inert());
    }

    #[test]
    fn underlying_monoid_examples() {
        let id = MonotoneMap::identity(3);
        assert_eq!(underlying_monoid(&id), PointedMap::identity(3));
        let phi = MonotoneMap::new(1, 2, vec![0, 2]).unwrap();
        assert_eq!(underlying_monoid(&phi).values(), &[None, Some(1)]);
        for n in 1..=4 {
            for i in 0..n {
                let rho = MonotoneMap::segal(i, n).unwrap();
                assert_eq!(underlying_monoid(&rho), PointedMap::segal(i + 1, n).unwrap());
            }
        }
    }

    #[test]
    fn interval_rule_merges_on_interior_faces() {
        let d1 = MonotoneMap::coface(2, 1).unwrap();
        assert_eq!(interval_pullback(&d1).values(), &[Some(1), Some(1)]);
        assert_eq!(underlying_monoid(&d1).values(), &[None, Some(1)]);
    }

    #[test]
    fn smash_segal_example() {
        let tau = PointedMap::segal(1, 2).unwrap();
        let kappa = smash_segal(2, &tau).unwrap();
        assert_eq!(kappa.values(), &[Some(1), None, Some(2), None]);
        assert_eq!(smash_segal(1, &tau).unwrap(), tau);
        assert!(smash_segal(2, &PointedMap::fold(2)).is_err());
    }
}
