use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A morphism `[source] -> [target]` of the simplex category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.source, self.target, self.values)
    }
}

impl MonotoneMap {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source + 1 {
            return Err(Error::InvalidMap(format!(
                "[{source}] has {} elements, got {} values",
                source + 1,
                values.len()
            )));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidMap(format!("values {values:?} leave [{target}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("values {values:?} not monotone")));
        }
        Ok(MonotoneMap { source, target, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { source: n, target: n, values: (0..=n).collect() }
    }

    /// The inert map `[size] -> [target]` with `0 ↦ offset`.
    pub fn inert(size: usize, offset: usize, target: usize) -> Result<Self> {
        if offset + size > target {
            return Err(Error::InvalidMap(format!("interval [{offset}, {}] leaves [{target}]", offset + size)));
        }
        Ok(MonotoneMap { source: size, target, values: (offset..=offset + size).collect() })
    }

    /// The Segal map `ρ_i : [1] -> [n]`, `0 ↦ i`, `1 ↦ i + 1`.
    pub fn segal(i: usize, n: usize) -> Result<Self> {
        Self::inert(1, i, n)
    }

    /// The coface `δ_j : [n-1] -> [n]` skipping `j`.
    pub fn coface(n: usize, j: usize) -> Result<Self> {
        if n == 0 || j > n {
            return Err(Error::InvalidMap(format!("no coface δ_{j} into [{n}]")));
        }
        let values = (0..n).map(|i| if i < j { i } else { i + 1 }).collect();
        Ok(MonotoneMap { source: n - 1, target: n, values })
    }

    /// The codegeneracy `σ_j : [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::InvalidMap(format!("no codegeneracy σ_{j} onto [{n}]")));
        }
        let values = (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect();
        Ok(MonotoneMap { source: n + 1, target: n, values })
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Result<Self> {
        Self::new(source, target, vec![value; source + 1])
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if other.target != self.source {
            return Err(Error::SizeMismatch(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(MonotoneMap {
            source: other.source,
            target: self.target,
            values: other.values.iter().map(|&i| self.values[i]).collect(),
        })
    }

    pub fn is_inert(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == self.values[0] + i)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.source] == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.is_inert() && self.values[0] == 0
    }

    /// Smallest preimage of `k`, if any.
    pub fn min_preimage(&self, k: usize) -> Option<usize> {
        self.values.iter().position(|&v| v == k)
    }

    /// All monotone maps `[source] -> [target]` in lexicographic order.
    pub fn all(source: usize, target: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(source + 1);
        fn rec(source: usize, target: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == source + 1 {
                out.push(MonotoneMap { source, target, values: cur.clone() });
                return;
            }
            for v in lo..=target {
                cur.push(v);
                rec(source, target, v, cur, out);
                cur.pop();
            }
        }
        rec(source, target, 0, &mut cur, &mut out);
        out
    }

    pub fn all_injective(source: usize, target: usize) -> Vec<MonotoneMap> {
        Self::all(source, target).into_iter().filter(|m| m.is_injective()).collect()
    }

    pub fn all_surjective(source: usize, target: usize) -> Vec<MonotoneMap> {
        Self::all(source, target).into_iter().filter(|m| m.is_surjective()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(MonotoneMap::new(1, 2, vec![0, 2]).is_ok());
        assert!(MonotoneMap::new(1, 2, vec![2, 0]).is_err());
        assert!(MonotoneMap::new(1, 2, vec![0, 3]).is_err());
        assert!(MonotoneMap::new(2, 2, vec![0, 1]).is_err());
    }

    #[test]
    fn predicates() {
        let rho = MonotoneMap::segal(1, 3).unwrap();
        assert_eq!(rho.values(), &[1, 2]);
        assert!(rho.is_inert() && rho.is_injective() && !rho.is_surjective());
        let skip = MonotoneMap::new(1, 2, vec![0, 2]).unwrap();
        assert!(!skip.is_inert() && skip.is_injective());
        let s = MonotoneMap::codegeneracy(1, 0).unwrap();
        assert_eq!(s.values(), &[0, 0, 1]);
        assert!(s.is_surjective());
        assert_eq!(MonotoneMap::coface(2, 1).unwrap().values(), &[0, 2]);
    }

    #[test]
    fn counts_match_binomials() {
        // monotone maps [m] -> [n] number C(m + n + 1, m + 1)
        assert_eq!(MonotoneMap::all(1, 2).len(), 6);
        assert_eq!(MonotoneMap::all(2, 2).len(), 10);
        assert_eq!(MonotoneMap::all_injective(1, 3).len(), 6);
        assert_eq!(MonotoneMap::all_surjective(3, 1).len(), 3);
    }

    #[test]
    fn composition_is_associative() {
        for a in MonotoneMap::all(1, 2) {
            for b in MonotoneMap::all(2, 2) {
                for c in MonotoneMap::all(2, 1) {
                    let left = c.compose(&b).unwrap().compose(&a).unwrap();
                    let right = c.compose(&b.compose(&a).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
