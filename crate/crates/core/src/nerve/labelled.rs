use std::collections::HashMap;

use super::path::{build_path, nerve, nondegenerate, Bisimplex};
use crate::error::{Error, Result};
use crate::fincat::GraphLimit;
use crate::simplex::MonotoneMap;

/// A bisimplicial finite set, materialized on demand. `act` is the action of
/// `(α, β)` with `α : [u'] -> [u]`, `β : [v'] -> [v]`, sending `X_{u,v}` to
/// `X_{u',v'}`.
pub trait Bisimplicial {
    fn size(&self, u: usize, v: usize) -> Result<usize>;
    fn act(&self, alpha: &MonotoneMap, beta: &MonotoneMap, x: usize) -> usize;

    /// The whole function `X_{u,v} -> X_{u',v'}`.
    fn act_table(&self, alpha: &MonotoneMap, beta: &MonotoneMap) -> Result<Vec<usize>> {
        let n = self.size(alpha.target(), beta.target())?;
        Ok((0..n).map(|x| self.act(alpha, beta, x)).collect())
    }
}

/// `𝔡X_l`: compatible labellings of the nerve of `Path(l)` by `X`. Each
/// element assigns to `simplices[i]` an element of `X_{u,v}`.
#[derive(Clone, Debug)]
pub struct LabelledLimit {
    pub level: usize,
    pub simplices: Vec<Bisimplex>,
    pub elements: Vec<Vec<usize>>,
}

impl LabelledLimit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &Bisimplex) -> Option<usize> {
        self.simplices.iter().position(|t| t == s)
    }

    /// The component of element `e` at simplex `s`.
    pub fn component(&self, e: usize, s: &Bisimplex) -> usize {
        self.elements[e][self.index_of(s).expect("simplex present")]
    }
}

struct ActCache<'a, X: Bisimplicial + ?Sized> {
    x: &'a X,
    ids: HashMap<(MonotoneMap, MonotoneMap), usize>,
}

impl<X: Bisimplicial + ?Sized> ActCache<'_, X> {
    fn get(&mut self, g: &mut GraphLimit, alpha: &MonotoneMap, beta: &MonotoneMap) -> Result<usize> {
        if let Some(&id) = self.ids.get(&(alpha.clone(), beta.clone())) {
            return Ok(id);
        }
        let id = g.add_map(self.x.act_table(alpha, beta)?);
        self.ids.insert((alpha.clone(), beta.clone()), id);
        Ok(id)
    }
}

/// `𝔡X_l` as a limit over nondegenerate simplices with `u + v ≤ l` and
/// their injective faces. A face of a nondegenerate simplex can be
/// degenerate (an outer face can leave two equal columns); such faces are
/// added as extra nodes tied to their nondegenerate root by the degeneracy,
/// which makes the result agree with the limit over all simplices.
pub fn labelled_limit<X: Bisimplicial + ?Sized>(x: &X, l: usize) -> Result<LabelledLimit> {
    nondegenerate_limit(x, l, true)
}

/// The limit over nondegenerate simplices and the injective maps between
/// them only, dropping constraints through degenerate faces. Agrees with
/// `labelled_limit` for `l ≤ 2`.
pub fn labelled_limit_nondegenerate<X: Bisimplicial + ?Sized>(x: &X, l: usize) -> Result<LabelledLimit> {
    nondegenerate_limit(x, l, false)
}

fn nondegenerate_limit<X: Bisimplicial + ?Sized>(x: &X, l: usize, degenerate_faces: bool) -> Result<LabelledLimit> {
    let path = build_path(l)?;
    let mut simplices = Vec::new();
    for u in 0..=l {
        for v in 0..=l - u {
            simplices.extend(nondegenerate(&path, u, v));
        }
    }
    let count = simplices.len();
    let mut index: HashMap<Bisimplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut sizes = simplices.iter().map(|s| x.size(s.u(), s.v)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        let (u, v) = s.dims();
        for u2 in 0..=u {
            for alpha in MonotoneMap::all_injective(u2, u) {
                for v2 in 0..=v {
                    for beta in MonotoneMap::all_injective(v2, v) {
                        if alpha.is_identity() && beta.is_identity() {
                            continue;
                        }
                        let face = s.act(&alpha, &beta);
                        if let Some(&j) = index.get(&face) {
                            edges.push((i, j, alpha.clone(), beta.clone()));
                        } else if degenerate_faces {
                            let j = index.len();
                            index.insert(face.clone(), j);
                            sizes.push(x.size(u2, v2)?);
                            let (root, su, sv) = face.normal_form();
                            edges.push((index[&root], j, su, sv));
                            edges.push((i, j, alpha.clone(), beta.clone()));
                        }
                    }
                }
            }
        }
    }
    let mut g = GraphLimit::new(sizes);
    let mut cache = ActCache { x, ids: HashMap::new() };
    for (i, j, alpha, beta) in edges {
        let m = cache.get(&mut g, &alpha, &beta)?;
        g.add_edge(i, j, m);
    }
    let mut elements: Vec<Vec<usize>> = g
        .solve()
        .into_iter()
        .map(|mut e| {
            e.truncate(count);
            e
        })
        .collect();
    elements.dedup();
    Ok(LabelledLimit { level: l, simplices, elements })
}

/// The limit over the full category of elements truncated at `u, v ≤ bound`,
/// generated by elementary faces and degeneracies. Returned restricted to the
/// nondegenerate simplices so it can be compared with `labelled_limit`.
pub fn labelled_limit_full<X: Bisimplicial + ?Sized>(x: &X, l: usize, bound: usize) -> Result<LabelledLimit> {
    let path = build_path(l)?;
    let mut simplices = Vec::new();
    for u in 0..=bound {
        for v in 0..=bound {
            simplices.extend(nerve(&path, u, v));
        }
    }
    let index: HashMap<Bisimplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let sizes = simplices.iter().map(|s| x.size(s.u(), s.v)).collect::<Result<Vec<_>>>()?;
    let mut g = GraphLimit::new(sizes);
    let mut cache = ActCache { x, ids: HashMap::new() };
    for (i, s) in simplices.iter().enumerate() {
        let (u, v) = s.dims();
        let id_u = MonotoneMap::identity(u);
        let id_v = MonotoneMap::identity(v);
        let mut moves: Vec<(MonotoneMap, MonotoneMap)> = Vec::new();
        if u > 0 {
            for j in 0..=u {
                moves.push((MonotoneMap::coface(u, j)?, id_v.clone()));
            }
        }
        if u < bound {
            for j in 0..=u {
                moves.push((MonotoneMap::codegeneracy(u, j)?, id_v.clone()));
            }
        }
        if v > 0 {
            for j in 0..=v {
                moves.push((id_u.clone(), MonotoneMap::coface(v, j)?));
            }
        }
        if v < bound {
            for j in 0..=v {
                moves.push((id_u.clone(), MonotoneMap::codegeneracy(v, j)?));
            }
        }
        for (alpha, beta) in moves {
            let target = s.act(&alpha, &beta);
            let j = index[&target];
            let m = cache.get(&mut g, &alpha, &beta)?;
            g.add_edge(i, j, m);
        }
    }
    let full = g.solve();
    let keep: Vec<usize> = (0..simplices.len())
        .filter(|&i| simplices[i].is_nondegenerate() && simplices[i].u() + simplices[i].v <= l)
        .collect();
    let kept = keep.iter().map(|&i| simplices[i].clone()).collect::<Vec<_>>();
    // reorder to match labelled_limit's simplex order
    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by_key(|&i| {
        let s = &kept[i];
        (s.u(), s.v, s.clone())
    });
    let simplices: Vec<Bisimplex> = order.iter().map(|&i| kept[i].clone()).collect();
    let mut elements: Vec<Vec<usize>> = full.iter().map(|e| order.iter().map(|&i| e[keep[i]]).collect()).collect();
    elements.sort();
    elements.dedup();
    Ok(LabelledLimit { level: l, simplices, elements })
}

/// Restriction `𝔡X_l -> 𝔡X_m` along an injective `ι : [m] -> [l]`: the
/// component at `σ` is read at `ι(σ)`.
pub fn restrict(lim: &LabelledLimit, target: &LabelledLimit, iota: &MonotoneMap) -> Result<Vec<Vec<usize>>> {
    if !iota.is_injective() || iota.target() != lim.level || iota.source() != target.level {
        return Err(Error::InvalidMap(format!("{iota:?} is not a face of [{}]", lim.level)));
    }
    let positions: Vec<usize> = target
        .simplices
        .iter()
        .map(|s| lim.index_of(&s.push(iota)).expect("pushed simplex is nondegenerate"))
        .collect();
    Ok(lim.elements.iter().map(|e| positions.iter().map(|&p| e[p]).collect()).collect())
}

/// The `(1,1)`-simplex `{0, l} ⊆ [0, l]`.
pub fn xi_simplex(l: usize) -> Result<Bisimplex> {
    if l < 2 {
        return Err(Error::BoundExceeded(format!("ξ needs l ≥ 2, got {l}")));
    }
    let full = (0..=l).fold(0u32, |acc, b| acc | (1 << b));
    Ok(Bisimplex { v: 1, objects: vec![0, l], columns: vec![vec![1 | (1 << l), full]] })
}

/// The spine `(l, 0)`-simplex `0 < 1 < … < l`.
pub fn spine_simplex(l: usize) -> Bisimplex {
    Bisimplex { v: 0, objects: (0..=l).collect(), columns: (0..l).map(|i| vec![(1 << i) | (1 << (i + 1))]).collect() }
}

/// `ξ : 𝔡X_l -> X_{1,1}`.
pub fn xi(lim: &LabelledLimit, e: usize) -> Result<usize> {
    let s = xi_simplex(lim.level)?;
    Ok(lim.component(e, &s))
}
