use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::MonotoneMap;

/// `Path(l)`: objects `0..=l`, and `Hom(i, j)` the subsets of `[i, j]`
/// containing both ends, ordered by inclusion. Subsets are bitmasks.
#[derive(Clone, Debug)]
pub struct Path2Cat {
    pub level: usize,
    homs: Vec<Vec<Vec<u32>>>,
}

pub const MAX_LEVEL: usize = 8;

pub fn build_path(l: usize) -> Result<Path2Cat> {
    if l > MAX_LEVEL {
        return Err(Error::BoundExceeded(format!("path level {l} above {MAX_LEVEL}")));
    }
    let mut homs = vec![vec![Vec::new(); l + 1]; l + 1];
    for i in 0..=l {
        for j in i..=l {
            let ends = (1u32 << i) | (1u32 << j);
            let mut h: Vec<u32> = (0u32..(1 << (l + 1)))
                .filter(|&m| m & ends == ends && (i..=j).fold(0u32, |acc, b| acc | (1 << b)) & m == m)
                .collect();
            h.sort_by_key(|m| (m.count_ones(), *m));
            homs[i][j] = h;
        }
    }
    Ok(Path2Cat { level: l, homs })
}

impl Path2Cat {
    /// Elements of `Hom(i, j)`, by size then bitmask; empty for `i > j`.
    pub fn hom(&self, i: usize, j: usize) -> &[u32] {
        if i > j {
            return &[];
        }
        &self.homs[i][j]
    }

    pub fn hom_size(&self, i: usize, j: usize) -> usize {
        self.hom(i, j).len()
    }
}

pub fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask & (1 << b) != 0).collect()
}

/// A `(u, v)`-simplex of the nerve of `Path(l)`: objects `i_0 ≤ … ≤ i_u` and,
/// for each segment `r`, a chain of `v + 1` nested subsets in
/// `Hom(i_r, i_{r+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bisimplex {
    pub v: usize,
    pub objects: Vec<usize>,
    pub columns: Vec<Vec<u32>>,
}

impl Bisimplex {
    pub fn u(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.u(), self.v)
    }

    pub fn is_nondegenerate(&self) -> bool {
        let strict = self.objects.windows(2).all(|w| w[0] < w[1]);
        let distinct = (0..self.v).all(|c| self.columns.iter().any(|seg| seg[c] != seg[c + 1]));
        strict && distinct
    }

    /// Action of `α : [u'] -> [u]` in the first variable: segments compose by union.
    pub fn act_u(&self, alpha: &MonotoneMap) -> Bisimplex {
        assert_eq!(alpha.target(), self.u(), "α must land in [u]");
        let objects: Vec<usize> = alpha.values().iter().map(|&r| self.objects[r]).collect();
        let columns = (0..alpha.source())
            .map(|r| {
                let (a, b) = (alpha.apply(r), alpha.apply(r + 1));
                (0..=self.v)
                    .map(|c| {
                        if a == b {
                            1u32 << self.objects[a]
                        } else {
                            (a..b).fold(0u32, |acc, s| acc | self.columns[s][c])
                        }
                    })
                    .collect()
            })
            .collect();
        Bisimplex { v: self.v, objects, columns }
    }

    /// Action of `β : [v'] -> [v]` in the second variable.
    pub fn act_v(&self, beta: &MonotoneMap) -> Bisimplex {
        assert_eq!(beta.target(), self.v, "β must land in [v]");
        let columns = self.columns.iter().map(|seg| beta.values().iter().map(|&c| seg[c]).collect()).collect();
        Bisimplex { v: beta.source(), objects: self.objects.clone(), columns }
    }

    pub fn act(&self, alpha: &MonotoneMap, beta: &MonotoneMap) -> Bisimplex {
        self.act_u(alpha).act_v(beta)
    }

    /// Image under the map induced by an injective `ι : [m] -> [l]`.
    pub fn push(&self, iota: &MonotoneMap) -> Bisimplex {
        let map_mask = |m: u32| mask_to_vec(m).into_iter().fold(0u32, |acc, b| acc | (1 << iota.apply(b)));
        Bisimplex {
            v: self.v,
            objects: self.objects.iter().map(|&o| iota.apply(o)).collect(),
            columns: self.columns.iter().map(|seg| seg.iter().map(|&m| map_mask(m)).collect()).collect(),
        }
    }

    /// Eilenberg-Zilber decomposition: the nondegenerate simplex and the two
    /// surjections whose action recovers `self`.
    pub fn normal_form(&self) -> (Bisimplex, MonotoneMap, MonotoneMap) {
        let mut keep_obj = vec![0usize];
        let mut s_u = vec![0usize];
        for r in 1..=self.u() {
            if self.objects[r] != self.objects[r - 1] {
                keep_obj.push(r);
            }
            s_u.push(keep_obj.len() - 1);
        }
        let mut keep_col = vec![0usize];
        let mut s_v = vec![0usize];
        for c in 1..=self.v {
            if self.columns.iter().any(|seg| seg[c] != seg[c - 1]) {
                keep_col.push(c);
            }
            s_v.push(keep_col.len() - 1);
        }
        let objects: Vec<usize> = keep_obj.iter().map(|&r| self.objects[r]).collect();
        let columns = keep_obj
            .windows(2)
            .map(|w| {
                // the non-identity segment between kept objects
                let seg = (w[0]..w[1]).find(|&s| self.objects[s] != self.objects[s + 1]).expect("object changes");
                keep_col.iter().map(|&c| self.columns[seg][c]).collect()
            })
            .collect();
        let base = Bisimplex { v: keep_col.len() - 1, objects, columns };
        let su = MonotoneMap::new(self.u(), base.u(), s_u).expect("surjection");
        let sv = MonotoneMap::new(self.v, base.v, s_v).expect("surjection");
        (base, su, sv)
    }

    pub fn encode(&self) -> (Vec<usize>, Vec<Vec<Vec<usize>>>) {
        (self.objects.clone(), self.columns.iter().map(|seg| seg.iter().map(|&m| mask_to_vec(m)).collect()).collect())
    }
}

/// All `(u, v)`-simplices of the nerve of `Path(l)`, sorted.
pub fn nerve(path: &Path2Cat, u: usize, v: usize) -> Vec<Bisimplex> {
    let l = path.level;
    let mut out = Vec::new();
    let mut objects = Vec::with_capacity(u + 1);
    object_chains(l, u + 1, 0, &mut objects, &mut |objs| {
        let per_segment: Vec<Vec<Vec<u32>>> = objs.windows(2).map(|w| chains(path.hom(w[0], w[1]), v + 1)).collect();
        let mut idx = vec![0usize; u];
        if per_segment.iter().any(|c| c.is_empty()) {
            return;
        }
        loop {
            out.push(Bisimplex {
                v,
                objects: objs.to_vec(),
                columns: idx.iter().zip(&per_segment).map(|(&i, c)| c[i].clone()).collect(),
            });
            let mut k = u;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < per_segment[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    });
    out.sort();
    out
}

fn object_chains(l: usize, len: usize, min: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for o in min..=l {
        cur.push(o);
        object_chains(l, len, o, cur, f);
        cur.pop();
    }
}

/// Weakly increasing chains of length `len` under inclusion.
fn chains(hom: &[u32], len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(hom: &[u32], len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for &m in hom {
            if cur.last().is_none_or(|&p| p & m == p) {
                cur.push(m);
                go(hom, len, cur, out);
                cur.pop();
            }
        }
    }
    go(hom, len, &mut cur, &mut out);
    out
}

pub fn nondegenerate(path: &Path2Cat, u: usize, v: usize) -> Vec<Bisimplex> {
    nerve(path, u, v).into_iter().filter(|s| s.is_nondegenerate()).collect()
}

/// Counts of nondegenerate simplices for `u, v ≤ bound`.
pub fn nondegenerate_table(l: usize, bound: usize) -> Result<BTreeMap<(usize, usize), usize>> {
    if l > 5 || bound > 6 {
        return Err(Error::BoundExceeded(format!("nerve table for level {l}, bound {bound}")));
    }
    let path = build_path(l)?;
    let mut table = BTreeMap::new();
    for u in 0..=bound {
        for v in 0..=bound {
            table.insert((u, v), nondegenerate(&path, u, v).len());
        }
    }
    Ok(table)
}

#[derive(Serialize)]
pub struct NerveDump {
    pub level: usize,
    pub simplices: BTreeMap<String, Vec<(Vec<usize>, Vec<Vec<Vec<usize>>>)>>,
}

/// Nondegenerate simplices keyed by `"(u,v)"`.
pub fn dump_nerve(l: usize) -> Result<NerveDump> {
    let path = build_path(l)?;
    let mut simplices = BTreeMap::new();
    for u in 0..=l {
        for v in 0..=l - u {
            let s = nondegenerate(&path, u, v);
            if !s.is_empty() {
                simplices.insert(format!("({u},{v})"), s.iter().map(|x| x.encode()).collect());
            }
        }
    }
    Ok(NerveDump { level: l, simplices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_sizes() {
        let p = build_path(4).unwrap();
        assert_eq!(p.hom_size(0, 4), 8);
        assert_eq!(p.hom_size(2, 2), 1);
        assert_eq!(p.hom_size(3, 1), 0);
        let p2 = build_path(2).unwrap();
        assert_eq!(p2.hom(0, 2), &[0b101, 0b111]);
    }

    #[test]
    fn level_two_counts() {
        let p = build_path(2).unwrap();
        let counts: Vec<usize> =
            [(0, 0), (1, 0), (2, 0), (1, 1), (0, 1)].iter().map(|&(u, v)| nondegenerate(&p, u, v).len()).collect();
        assert_eq!(counts, vec![3, 4, 1, 1, 0]);
    }

    #[test]
    fn low_levels() {
        assert_eq!(nerve(&build_path(0).unwrap(), 0, 0).len(), 1);
        let p1 = build_path(1).unwrap();
        assert_eq!(nondegenerate(&p1, 0, 0).len(), 2);
        assert_eq!(nondegenerate(&p1, 1, 0).len(), 1);
    }

    #[test]
    fn normal_form_recovers_simplex() {
        let p = build_path(3).unwrap();
        for (u, v) in [(2, 1), (1, 2), (3, 0), (0, 2)] {
            for s in nerve(&p, u, v) {
                let (base, su, sv) = s.normal_form();
                assert!(base.is_nondegenerate(), "{s:?}");
                assert_eq!(base.act(&su, &sv), s);
            }
        }
    }
}
