use std::collections::HashMap;

use super::family::{
    compose, compose_all, pullback_ls, pullback_map, pushforward_ls, pushforward_map, symmetry, tensor, tensor_map,
    FamilyMap, VectorFamily,
};
use super::iso::{base_change, projection_iso, pushforward_along_bijection, pushforward_composite_iso, PullbackSquare};
use crate::error::{Error, Result};
use crate::span::{compose_spans, composite_pairs, left_unit_map, right_unit_map, Span};

/// `L ∩ M = L ×_{X×Y} M` as index pairs in lexicographic order.
pub fn intersection(l: &Span, m: &Span) -> Result<Vec<(usize, usize)>> {
    if l.left != m.left || l.right != m.right {
        return Err(Error::SpanMismatch("intersected spans must share both feet".into()));
    }
    let mut out = Vec::new();
    for a in 0..l.apex.len() {
        for b in 0..m.apex.len() {
            if l.left_map[a] == m.left_map[b] && l.right_map[a] == m.right_map[b] {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

fn index_of(pairs: &[(usize, usize)]) -> HashMap<(usize, usize), usize> {
    pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect()
}

/// A local system on the intersection of two spans with the same feet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMorphism {
    pub l: Span,
    pub m: Span,
    pub intersection: Vec<(usize, usize)>,
    pub payload: VectorFamily,
}

impl TwoMorphism {
    pub fn new(l: Span, m: Span, payload: VectorFamily) -> Result<Self> {
        let intersection = intersection(&l, &m)?;
        if payload.base() != intersection.len() {
            return Err(Error::SizeMismatch(format!(
                "payload has base {} but the intersection has {} points",
                payload.base(),
                intersection.len()
            )));
        }
        Ok(TwoMorphism { l, m, intersection, payload })
    }

    /// Both spans `pt <- L -> pt`, payload given as an `|L| x |M|` table.
    pub fn over_points(dims: &[Vec<usize>]) -> Result<Self> {
        let rows = dims.len();
        let cols = dims.first().map_or(0, Vec::len);
        if dims.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged dimension table".into()));
        }
        let l = Span::from_sizes(1, 1, vec![0; rows], vec![0; rows])?;
        let mut m = Span::from_sizes(1, 1, vec![0; cols], vec![0; cols])?;
        m.apex = (0..cols).map(|i| format!("b{i}")).collect();
        let payload = VectorFamily::new(dims.iter().flatten().copied().collect());
        TwoMorphism::new(l, m, payload)
    }

    /// `∇_*O_L` for the diagonal `∇ : L → L ∩ L`.
    pub fn identity(l: &Span) -> Result<Self> {
        let int = intersection(l, l)?;
        let diag = diagonal(l, &int);
        let payload = pushforward_ls(&diag, int.len(), &VectorFamily::unit(l.apex.len()))?;
        Ok(TwoMorphism { l: l.clone(), m: l.clone(), intersection: int, payload })
    }

    /// The structure sheaf on the intersection of the identity span with itself.
    pub fn horizontal_unit(foot: &[String]) -> Self {
        let id = Span::identity(foot);
        let int: Vec<(usize, usize)> = (0..foot.len()).map(|y| (y, y)).collect();
        TwoMorphism { l: id.clone(), m: id, intersection: int, payload: VectorFamily::unit(foot.len()) }
    }

    pub fn with_payload(&self, payload: VectorFamily) -> Result<Self> {
        TwoMorphism::new(self.l.clone(), self.m.clone(), payload)
    }

    /// `table[a][b]` is the dimension at `(a, b)`, zero off the intersection.
    pub fn dims_table(&self) -> Vec<Vec<usize>> {
        let mut t = vec![vec![0; self.m.apex.len()]; self.l.apex.len()];
        for (i, &(a, b)) in self.intersection.iter().enumerate() {
            t[a][b] = self.payload.dims[i];
        }
        t
    }
}

fn diagonal(l: &Span, int: &[(usize, usize)]) -> Vec<usize> {
    let idx = index_of(int);
    (0..l.apex.len()).map(|a| idx[&(a, a)]).collect()
}

/// The triple intersection `L ∩ M ∩ N` and its three projections.
#[derive(Clone, Debug)]
pub struct TripleIntersection {
    pub triples: Vec<(usize, usize, usize)>,
    /// To `L ∩ M`.
    pub i_n: Vec<usize>,
    /// To `M ∩ N`.
    pub i_l: Vec<usize>,
    /// To `L ∩ N`.
    pub i_m: Vec<usize>,
    pub outer: Vec<(usize, usize)>,
}

pub fn triple_intersection(first: &TwoMorphism, second: &TwoMorphism) -> Result<TripleIntersection> {
    if first.m != second.l {
        return Err(Error::SpanMismatch("vertical composition needs a shared middle span".into()));
    }
    let outer = intersection(&first.l, &second.m)?;
    let lm = index_of(&first.intersection);
    let mn = index_of(&second.intersection);
    let ln = index_of(&outer);
    let mut t = TripleIntersection {
        triples: Vec::new(),
        i_n: Vec::new(),
        i_l: Vec::new(),
        i_m: Vec::new(),
        outer: Vec::new(),
    };
    for &(a, b) in &first.intersection {
        for &(b2, c) in &second.intersection {
            if b2 == b {
                t.triples.push((a, b, c));
                t.i_n.push(lm[&(a, b)]);
                t.i_l.push(mn[&(b, c)]);
                t.i_m.push(ln[&(a, c)]);
            }
        }
    }
    // Lexicographic order in (a, b, c).
    let mut order: Vec<usize> = (0..t.triples.len()).collect();
    order.sort_by_key(|&i| t.triples[i]);
    let permute = |v: &[usize]| order.iter().map(|&i| v[i]).collect::<Vec<_>>();
    t = TripleIntersection {
        triples: order.iter().map(|&i| t.triples[i]).collect(),
        i_n: permute(&t.i_n),
        i_l: permute(&t.i_l),
        i_m: permute(&t.i_m),
        outer,
    };
    Ok(t)
}

/// `i_{M,*}(i_N*𝓜 ⊗ i_L*𝓝)` over `L ∩ N`.
pub fn compose2_vertical(first: &TwoMorphism, second: &TwoMorphism) -> Result<TwoMorphism> {
    let t = triple_intersection(first, second)?;
    let inner = tensor(&pullback_ls(&t.i_n, &first.payload)?, &pullback_ls(&t.i_l, &second.payload)?)?;
    let payload = pushforward_ls(&t.i_m, t.outer.len(), &inner)?;
    Ok(TwoMorphism { l: first.l.clone(), m: second.m.clone(), intersection: t.outer, payload })
}

/// The apex pairs `((L∩M) ×_Y (L'∩M'))` and their maps into the composed
/// intersection and onto the two factors.
#[derive(Clone, Debug)]
pub struct HorizontalData {
    pub pairs: Vec<(usize, usize)>,
    pub into_composite: Vec<usize>,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub l: Span,
    pub m: Span,
    pub intersection: Vec<(usize, usize)>,
}

pub fn horizontal_data(first: &TwoMorphism, second: &TwoMorphism) -> Result<HorizontalData> {
    let l = compose_spans(&first.l, &second.l)?;
    let m = compose_spans(&first.m, &second.m)?;
    let lp = index_of(&composite_pairs(&first.l, &second.l));
    let mp = index_of(&composite_pairs(&first.m, &second.m));
    let int = intersection(&l, &m)?;
    let ip = index_of(&int);
    let mut d = HorizontalData {
        pairs: Vec::new(),
        into_composite: Vec::new(),
        first: Vec::new(),
        second: Vec::new(),
        l,
        m,
        intersection: int,
    };
    for (s, &(a, b)) in first.intersection.iter().enumerate() {
        for (s2, &(a2, b2)) in second.intersection.iter().enumerate() {
            if first.l.right_map[a] != second.l.left_map[a2] {
                continue;
            }
            let p = lp[&(a, a2)];
            let q = mp[&(b, b2)];
            d.pairs.push((s, s2));
            d.into_composite.push(ip[&(p, q)]);
            d.first.push(s);
            d.second.push(s2);
        }
    }
    Ok(d)
}

/// `π*𝓜 ⊗ π'*𝓜'` on `(L∩M) ×_Y (L'∩M')`, extended by zero to the rest of
/// `(L×_Y L') ∩ (M×_Y M')`.
pub fn compose2_horizontal(first: &TwoMorphism, second: &TwoMorphism) -> Result<TwoMorphism> {
    let d = horizontal_data(first, second)?;
    let inner = tensor(&pullback_ls(&d.first, &first.payload)?, &pullback_ls(&d.second, &second.payload)?)?;
    let payload = pushforward_ls(&d.into_composite, d.intersection.len(), &inner)?;
    Ok(TwoMorphism { l: d.l, m: d.m, intersection: d.intersection, payload })
}

/// A named sequence of composable isomorphisms.
#[derive(Clone, Debug)]
pub struct IsoChain {
    pub steps: Vec<(&'static str, FamilyMap)>,
}

impl IsoChain {
    pub fn composite(&self) -> Result<FamilyMap> {
        let (first, rest) = self.steps.split_first().ok_or_else(|| Error::SizeMismatch("empty chain".into()))?;
        compose_all(&first.1, &rest.iter().map(|s| s.1.clone()).collect::<Vec<_>>())
    }

    pub fn all_invertible(&self) -> bool {
        self.steps.iter().all(|s| s.1.is_invertible())
    }
}

fn require_identity(map: &[usize], what: &str) -> Result<()> {
    if map.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::InvalidMap(format!("{what} is not the identity")));
    }
    Ok(())
}

/// The chain `𝓜 ∘ ∇_*O_M ≅ 𝓜`: base change, projection, and the collapse
/// of `i ∘ ∇'` to the identity, all pushed forward to `L ∩ M`.
pub fn vertical_right_unit_chain(m: &TwoMorphism) -> Result<IsoChain> {
    let id = TwoMorphism::identity(&m.m)?;
    let t = triple_intersection(m, &id)?;
    let tidx: HashMap<_, _> = t.triples.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n_t = t.triples.len();
    let n_p = m.intersection.len();
    let nabla_p: Vec<usize> = m.intersection.iter().map(|&(a, b)| tidx[&(a, b, b)]).collect();
    let j: Vec<usize> = m.intersection.iter().map(|&(_, b)| b).collect();
    let sq = PullbackSquare::new(
        t.i_l.clone(),
        diagonal(&m.m, &id.intersection),
        j.clone(),
        nabla_p.clone(),
        id.intersection.len(),
    )?;
    let bc = base_change(&sq, &VectorFamily::unit(m.m.apex.len()))?;
    let b = pullback_ls(&t.i_n, &m.payload)?;
    let a = pullback_ls(&j, &VectorFamily::unit(m.m.apex.len()))?;
    let pushed_a = pushforward_ls(&nabla_p, n_t, &a)?;
    let step_bc = tensor_map(&FamilyMap::identity(&b), &bc)?;
    let step_swap = symmetry(&b, &pushed_a)?;
    let step_proj = projection_iso(&nabla_p, &a, &b)?;
    let back: Vec<usize> = nabla_p.iter().map(|&x| t.i_n[x]).collect();
    require_identity(&back, "i_N ∘ ∇'")?;
    let pulled_b = pullback_ls(&nabla_p, &b)?;
    let step_unswap = pushforward_map(&nabla_p, n_t, &symmetry(&a, &pulled_b)?)?;
    let collapse: Vec<usize> = nabla_p.iter().map(|&x| t.i_m[x]).collect();
    require_identity(&collapse, "i_M ∘ ∇'")?;
    let x = tensor(&pulled_b, &a)?;
    let regroup = pushforward_composite_iso(&nabla_p, n_t, &t.i_m, n_p, &x)?
        .inverse()
        .ok_or_else(|| Error::InvalidMap("regrouping is not invertible".into()))?;
    let push = |f: &FamilyMap| pushforward_map(&t.i_m, n_p, f);
    Ok(IsoChain {
        steps: vec![
            ("base change", push(&step_bc)?),
            ("symmetry", push(&step_swap)?),
            ("projection", push(&step_proj)?),
            ("symmetry", push(&step_unswap)?),
            ("pushforward along i_M ∘ ∇'", regroup),
        ],
    })
}

/// The chain `∇_*O_L ∘ 𝓜 ≅ 𝓜`.
pub fn vertical_left_unit_chain(m: &TwoMorphism) -> Result<IsoChain> {
    let id = TwoMorphism::identity(&m.l)?;
    let t = triple_intersection(&id, m)?;
    let tidx: HashMap<_, _> = t.triples.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n_t = t.triples.len();
    let n_p = m.intersection.len();
    let nabla_p: Vec<usize> = m.intersection.iter().map(|&(a, b)| tidx[&(a, a, b)]).collect();
    let j: Vec<usize> = m.intersection.iter().map(|&(a, _)| a).collect();
    let sq = PullbackSquare::new(
        t.i_n.clone(),
        diagonal(&m.l, &id.intersection),
        j.clone(),
        nabla_p.clone(),
        id.intersection.len(),
    )?;
    let bc = base_change(&sq, &VectorFamily::unit(m.l.apex.len()))?;
    let b = pullback_ls(&t.i_l, &m.payload)?;
    let a = pullback_ls(&j, &VectorFamily::unit(m.l.apex.len()))?;
    let step_bc = tensor_map(&bc, &FamilyMap::identity(&b))?;
    let step_proj = projection_iso(&nabla_p, &a, &b)?;
    let back: Vec<usize> = nabla_p.iter().map(|&x| t.i_l[x]).collect();
    require_identity(&back, "i_L ∘ ∇'")?;
    let collapse: Vec<usize> = nabla_p.iter().map(|&x| t.i_m[x]).collect();
    require_identity(&collapse, "i_M ∘ ∇'")?;
    let x = tensor(&a, &pullback_ls(&nabla_p, &b)?)?;
    let regroup = pushforward_composite_iso(&nabla_p, n_t, &t.i_m, n_p, &x)?
        .inverse()
        .ok_or_else(|| Error::InvalidMap("regrouping is not invertible".into()))?;
    let push = |f: &FamilyMap| pushforward_map(&t.i_m, n_p, f);
    Ok(IsoChain {
        steps: vec![
            ("base change", push(&step_bc)?),
            ("projection", push(&step_proj)?),
            ("pushforward along i_M ∘ ∇'", regroup),
        ],
    })
}

/// The chain `𝓜 ∘_h O ≅ u*𝓜` (or `O ∘_h 𝓜` when `unit_on_left`), where
/// `u` is the unitor of the composite spans restricted to intersections.
/// Returns the chain and `u`.
pub fn horizontal_unit_chain(m: &TwoMorphism, unit_on_left: bool) -> Result<(IsoChain, Vec<usize>)> {
    let (d, own, unitor_l, unitor_m) = if unit_on_left {
        let unit = TwoMorphism::horizontal_unit(&m.l.left);
        let d = horizontal_data(&unit, m)?;
        let own = d.second.clone();
        (d, own, left_unit_map(&m.l), left_unit_map(&m.m))
    } else {
        let unit = TwoMorphism::horizontal_unit(&m.l.right);
        let d = horizontal_data(m, &unit)?;
        let own = d.first.clone();
        (d, own, right_unit_map(&m.l), right_unit_map(&m.m))
    };
    let idx = index_of(&m.intersection);
    let u: Vec<usize> = d.intersection.iter().map(|&(p, q)| idx[&(unitor_l[p], unitor_m[q])]).collect();
    // The unit factor is one-dimensional, so π*𝓜 ⊗ O and π*𝓜 share blocks.
    let pulled = pullback_ls(&own, &m.payload)?;
    let step = pushforward_along_bijection(&d.into_composite, &pulled)?;
    let mut inv = vec![0; d.into_composite.len()];
    for (x, &y) in d.into_composite.iter().enumerate() {
        inv[y] = x;
    }
    let through: Vec<usize> = inv.iter().map(|&x| own[x]).collect();
    if through != u {
        return Err(Error::InvalidMap("projection does not match the span unitor".into()));
    }
    Ok((IsoChain { steps: vec![("pushforward along a bijection", step)] }, u))
}

/// A map between two payloads over the same pair of spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeMorphism {
    pub two: TwoMorphism,
    pub map: FamilyMap,
}

impl ThreeMorphism {
    pub fn new(two: TwoMorphism, map: FamilyMap) -> Result<Self> {
        if map.source != two.payload {
            return Err(Error::DimensionMismatch("map must start at the payload".into()));
        }
        Ok(ThreeMorphism { two, map })
    }

    pub fn identity(two: &TwoMorphism) -> Self {
        ThreeMorphism { two: two.clone(), map: FamilyMap::identity(&two.payload) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition3 {
    Horizontal,
    Vertical,
    Transversal,
}

/// Composes 3-morphisms; `Transversal` applies `first` then `second`.
pub fn compose3(kind: Composition3, first: &ThreeMorphism, second: &ThreeMorphism) -> Result<ThreeMorphism> {
    match kind {
        Composition3::Transversal => {
            if first.two.l != second.two.l || first.two.m != second.two.m {
                return Err(Error::SpanMismatch("transversal composition needs the same spans".into()));
            }
            Ok(ThreeMorphism { two: first.two.clone(), map: compose(&second.map, &first.map)? })
        }
        Composition3::Vertical => {
            let t = triple_intersection(&first.two, &second.two)?;
            let inner = tensor_map(&pullback_map(&t.i_n, &first.map)?, &pullback_map(&t.i_l, &second.map)?)?;
            let map = pushforward_map(&t.i_m, t.outer.len(), &inner)?;
            Ok(ThreeMorphism { two: compose2_vertical(&first.two, &second.two)?, map })
        }
        Composition3::Horizontal => {
            let d = horizontal_data(&first.two, &second.two)?;
            let inner = tensor_map(&pullback_map(&d.first, &first.map)?, &pullback_map(&d.second, &second.map)?)?;
            let map = pushforward_map(&d.into_composite, d.intersection.len(), &inner)?;
            Ok(ThreeMorphism { two: compose2_horizontal(&first.two, &second.two)?, map })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_example() {
        let m = TwoMorphism::over_points(&[vec![2], vec![3]]).unwrap();
        let n = TwoMorphism::over_points(&[vec![1, 4]]).unwrap();
        let n = TwoMorphism::new(m.m.clone(), n.m.clone(), n.payload.clone()).unwrap();
        assert_eq!(compose2_vertical(&m, &n).unwrap().dims_table(), vec![vec![2, 8], vec![3, 12]]);
    }
}
