use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::adjunction::adjunct_right;
use super::family::{
    compose, pullback_ls, pullback_map, pushforward_ls, pushforward_map, tensor, tensor_map, FamilyMap, VectorFamily,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

/// Vertex sets `u_0..u_l` of a cartesian Θ^l span; a face `S` carries the
/// product `u_S`, enumerated with the first vertex most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBase {
    pub sizes: Vec<usize>,
}

impl ThetaBase {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::SizeMismatch("a Θ base needs at least one vertex".into()));
        }
        Ok(ThetaBase { sizes })
    }

    pub fn level(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn face_size(&self, face: &[usize]) -> usize {
        face.iter().map(|&i| self.sizes[i]).product()
    }

    pub fn decode(&self, face: &[usize], mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; face.len()];
        for (k, &i) in face.iter().enumerate().rev() {
            out[k] = idx % self.sizes[i];
            idx /= self.sizes[i];
        }
        out
    }

    pub fn encode(&self, face: &[usize], coords: &[usize]) -> usize {
        face.iter().zip(coords).fold(0, |acc, (&i, &c)| acc * self.sizes[i] + c)
    }

    /// The projection `u_face → u_sub` for `sub ⊆ face`.
    pub fn projection(&self, face: &[usize], sub: &[usize]) -> Vec<usize> {
        let pos: Vec<usize> = sub.iter().map(|s| face.iter().position(|f| f == s).expect("sub-face")).collect();
        (0..self.face_size(face))
            .map(|x| {
                let c = self.decode(face, x);
                self.encode(sub, &pos.iter().map(|&p| c[p]).collect::<Vec<_>>())
            })
            .collect()
    }

    /// Faces with at least `min` vertices, by size then lexicographically.
    pub fn faces(&self, min: usize) -> Vec<Vec<usize>> {
        let n = self.sizes.len();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .filter(|m| m.count_ones() as usize >= min)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }
}

/// A chain of local systems on one edge `u_i × u_j` with its vertical maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSystem {
    pub chain: Vec<VectorFamily>,
    pub verticals: Vec<FamilyMap>,
}

impl EdgeSystem {
    pub fn new(chain: Vec<VectorFamily>, verticals: Vec<FamilyMap>) -> Result<Self> {
        if chain.is_empty() || verticals.len() + 1 != chain.len() {
            return Err(Error::SizeMismatch("a chain of n+1 families needs n vertical maps".into()));
        }
        for (c, v) in verticals.iter().enumerate() {
            if v.source != chain[c] || v.target != chain[c + 1] {
                return Err(Error::DimensionMismatch(format!("vertical map {c} does not fit the chain")));
            }
        }
        Ok(EdgeSystem { chain, verticals })
    }

    /// Height zero.
    pub fn single(v: VectorFamily) -> Self {
        EdgeSystem { chain: vec![v], verticals: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.verticals.len()
    }
}

/// Map data per edge, `[slot][height]`.
pub type EdgeMaps = BTreeMap<(usize, usize), Vec<Vec<FamilyMap>>>;

/// Local systems on every edge of a cartesian Θ^l span, with a structure
/// map `φ_S : π*r_{min S, max S} → ⊗ π*r_{s_k, s_{k+1}}` on every face of
/// at least three vertices. `width` counts independent tuple slots and
/// `height` the vertical maps in each chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushPullThetaDiagram {
    pub base: ThetaBase,
    pub width: usize,
    pub height: usize,
    pub edges: BTreeMap<(usize, usize), Vec<EdgeSystem>>,
    /// `blocks[S][slot][c]`.
    pub blocks: BTreeMap<Vec<usize>, Vec<Vec<FamilyMap>>>,
}

fn ends(face: &[usize]) -> [usize; 2] {
    [face[0], face[face.len() - 1]]
}

fn consecutive(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    face.windows(2).map(|w| (w[0], w[1]))
}

impl PushPullThetaDiagram {
    pub fn new(
        base: ThetaBase,
        width: usize,
        height: usize,
        edges: BTreeMap<(usize, usize), Vec<EdgeSystem>>,
        blocks: BTreeMap<Vec<usize>, Vec<Vec<FamilyMap>>>,
    ) -> Result<Self> {
        let d = PushPullThetaDiagram { base, width, height, edges, blocks };
        d.validate()?;
        Ok(d)
    }

    pub fn level(&self) -> usize {
        self.base.level()
    }

    pub fn edge(&self, i: usize, j: usize) -> Result<&Vec<EdgeSystem>> {
        self.edges.get(&(i, j)).ok_or_else(|| Error::SizeMismatch(format!("no local system on edge ({i}, {j})")))
    }

    fn family(&self, i: usize, j: usize, slot: usize, c: usize) -> &VectorFamily {
        &self.edges[&(i, j)][slot].chain[c]
    }

    /// `π*r_{min S, max S}` on `u_S`.
    pub fn block_source(&self, face: &[usize], slot: usize, c: usize) -> Result<VectorFamily> {
        let [a, b] = ends(face);
        pullback_ls(&self.base.projection(face, &[a, b]), self.family(a, b, slot, c))
    }

    /// `⊗_k π*r_{s_k, s_{k+1}}` on `u_S`.
    pub fn block_target(&self, face: &[usize], slot: usize, c: usize) -> Result<VectorFamily> {
        let mut out: Option<VectorFamily> = None;
        for (i, j) in consecutive(face) {
            let f = pullback_ls(&self.base.projection(face, &[i, j]), self.family(i, j, slot, c))?;
            out = Some(match out {
                None => f,
                Some(acc) => tensor(&acc, &f)?,
            });
        }
        out.ok_or_else(|| Error::SizeMismatch("face with fewer than two vertices".into()))
    }

    /// `⊗_k π*m_{s_k, s_{k+1}}` for maps `m` chosen per edge.
    fn target_map(&self, face: &[usize], map: impl Fn(usize, usize) -> Result<FamilyMap>) -> Result<FamilyMap> {
        let mut out: Option<FamilyMap> = None;
        for (i, j) in consecutive(face) {
            let f = pullback_map(&self.base.projection(face, &[i, j]), &map(i, j)?)?;
            out = Some(match out {
                None => f,
                Some(acc) => tensor_map(&acc, &f)?,
            });
        }
        out.ok_or_else(|| Error::SizeMismatch("face with fewer than two vertices".into()))
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.level();
        for i in 0..=l {
            for j in i + 1..=l {
                let sys = self.edge(i, j)?;
                if sys.len() != self.width {
                    return Err(Error::SizeMismatch(format!("edge ({i}, {j}) has {} slots", sys.len())));
                }
                for s in sys {
                    EdgeSystem::new(s.chain.clone(), s.verticals.clone())?;
                    if s.height() != self.height || s.chain.iter().any(|v| v.base() != self.base.face_size(&[i, j])) {
                        return Err(Error::SizeMismatch(format!("edge ({i}, {j}) has the wrong height or base")));
                    }
                }
            }
        }
        for face in self.base.faces(3) {
            let blocks = self.blocks.get(&face).ok_or_else(|| Error::SizeMismatch(format!("no block on {face:?}")))?;
            if blocks.len() != self.width || blocks.iter().any(|b| b.len() != self.height + 1) {
                return Err(Error::SizeMismatch(format!("block on {face:?} has the wrong shape")));
            }
            for (slot, tower) in blocks.iter().enumerate() {
                for (c, phi) in tower.iter().enumerate() {
                    if phi.source != self.block_source(&face, slot, c)?
                        || phi.target != self.block_target(&face, slot, c)?
                    {
                        return Err(Error::DimensionMismatch(format!("block on {face:?} at ({slot}, {c})")));
                    }
                }
            }
        }
        self.check_commutativity()
    }

    fn check_commutativity(&self) -> Result<()> {
        for face in self.base.faces(3) {
            let [a, b] = ends(&face);
            let p = self.base.projection(&face, &[a, b]);
            for slot in 0..self.width {
                let tower = &self.blocks[&face][slot];
                for c in 0..self.height {
                    let down = self.target_map(&face, |i, j| Ok(self.edges[&(i, j)][slot].verticals[c].clone()))?;
                    let lhs = compose(&down, &tower[c])?;
                    let rhs = compose(&tower[c + 1], &pullback_map(&p, &self.edges[&(a, b)][slot].verticals[c])?)?;
                    if lhs != rhs {
                        return Err(Error::NotCommutative(format!("vertical square on {face:?} at ({slot}, {c})")));
                    }
                }
                if face.len() == 3 {
                    continue;
                }
                for k in face[1..face.len() - 1].iter().copied() {
                    let left: Vec<usize> = face.iter().copied().filter(|&s| s <= k).collect();
                    let right: Vec<usize> = face.iter().copied().filter(|&s| s >= k).collect();
                    let corner = [a, k, b];
                    for c in 0..=self.height {
                        let part = |sub: &[usize]| -> Result<FamilyMap> {
                            let q = self.base.projection(&face, sub);
                            if sub.len() >= 3 {
                                pullback_map(&q, &self.blocks[sub][slot][c])
                            } else {
                                Ok(FamilyMap::identity(&pullback_ls(&q, self.family(sub[0], sub[1], slot, c))?))
                            }
                        };
                        let split = tensor_map(&part(&left)?, &part(&right)?)?;
                        let through = compose(
                            &split,
                            &pullback_map(&self.base.projection(&face, &corner), &self.blocks[&corner[..]][slot][c])?,
                        )?;
                        if through != self.blocks[&face][slot][c] {
                            return Err(Error::NotCommutative(format!(
                                "block on {face:?} does not factor through {corner:?}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_spine_edge(&self, i: usize, j: usize) -> bool {
        j == i + 1
    }
}

/// The adjuncts `φ†_S : r_{min S, max S} → π_*(⊗ π*r_{s_k, s_{k+1}})`.
pub fn pushpull_maps(d: &PushPullThetaDiagram) -> Result<BTreeMap<Vec<usize>, Vec<Vec<FamilyMap>>>> {
    let mut out = BTreeMap::new();
    for (face, blocks) in &d.blocks {
        let [a, b] = ends(face);
        let p = d.base.projection(face, &[a, b]);
        let maps = blocks
            .iter()
            .enumerate()
            .map(|(slot, tower)| {
                tower
                    .iter()
                    .enumerate()
                    .map(|(c, phi)| adjunct_right(&p, d.family(a, b, slot, c), phi))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(face.clone(), maps);
    }
    Ok(out)
}

/// Every structure map of every face with at least three vertices has an
/// invertible adjunct.
pub fn is_pushpull(d: &PushPullThetaDiagram) -> Result<bool> {
    Ok(pushpull_maps(d)?.values().flatten().flatten().all(FamilyMap::is_invertible))
}

type Label = (Vec<usize>, Vec<usize>);

/// Basis labels of `(π_{i,j})_*(⊗_k π*p_{k,k+1})` at `(x_i, x_j)`: a point of
/// `u_{i..j}` over the ends, then one basis index per spine factor.
fn interval_labels(base: &ThetaBase, spine: &[&VectorFamily], i: usize, j: usize, xi: usize, xj: usize) -> Vec<Label> {
    let inner: Vec<usize> = (i + 1..j).collect();
    let mut out = Vec::new();
    for m in 0..base.face_size(&inner) {
        let mut y = vec![xi];
        y.extend(base.decode(&inner, m));
        y.push(xj);
        let dims: Vec<usize> =
            (i..j).map(|k| spine[k].dims[base.encode(&[k, k + 1], &[y[k - i], y[k + 1 - i]])]).collect();
        let total: usize = dims.iter().product();
        for mut t in 0..total {
            let mut b = vec![0; dims.len()];
            for (slot, &d) in dims.iter().enumerate().rev() {
                b[slot] = t % d;
                t /= d;
            }
            out.push((y.clone(), b));
        }
    }
    out
}

/// The canonical filling of a spine: `r_{i,j}` is the pushforward of the
/// tensor product of the pulled-back spine systems over `u_{i..j}`, and each
/// `φ_S` projects onto the summands whose points restrict to the given
/// point of `u_S`. `spine[k][slot]` lives on `u_k × u_{k+1}`.
pub fn synthesize_filling(base: &ThetaBase, spine: &[Vec<EdgeSystem>]) -> Result<PushPullThetaDiagram> {
    let l = base.level();
    if spine.len() != l {
        return Err(Error::SizeMismatch(format!("level {l} needs {l} spine edges, got {}", spine.len())));
    }
    let width = spine.first().map_or(1, Vec::len);
    let height = spine.first().and_then(|s| s.first()).map_or(0, EdgeSystem::height);
    let mut edges = BTreeMap::new();
    for (k, sys) in spine.iter().enumerate() {
        if sys.len() != width || sys.iter().any(|s| s.height() != height) {
            return Err(Error::SizeMismatch("spine edges disagree on width or height".into()));
        }
        edges.insert((k, k + 1), sys.clone());
    }
    for i in 0..=l {
        for j in i + 2..=l {
            let interval: Vec<usize> = (i..=j).collect();
            let p = base.projection(&interval, &[i, j]);
            let n = base.face_size(&[i, j]);
            let mut slots = Vec::new();
            for slot in 0..width {
                let tensor_over = |pick: &dyn Fn(&EdgeSystem) -> FamilyMap| -> Result<FamilyMap> {
                    let mut acc: Option<FamilyMap> = None;
                    for k in i..j {
                        let f = pullback_map(&base.projection(&interval, &[k, k + 1]), &pick(&spine[k][slot]))?;
                        acc = Some(match acc {
                            None => f,
                            Some(a) => tensor_map(&a, &f)?,
                        });
                    }
                    Ok(acc.expect("interval has an edge"))
                };
                let chain = (0..=height)
                    .map(|c| {
                        pushforward_ls(&p, n, &tensor_over(&|e: &EdgeSystem| FamilyMap::identity(&e.chain[c]))?.source)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let verticals = (0..height)
                    .map(|c| pushforward_map(&p, n, &tensor_over(&|e: &EdgeSystem| e.verticals[c].clone())?))
                    .collect::<Result<Vec<_>>>()?;
                slots.push(EdgeSystem::new(chain, verticals)?);
            }
            edges.insert((i, j), slots);
        }
    }
    let mut blocks = BTreeMap::new();
    for face in base.faces(3) {
        let [a, b] = ends(&face);
        let mut per_slot = Vec::new();
        for slot in 0..width {
            let mut tower = Vec::new();
            for c in 0..=height {
                let fams: Vec<&VectorFamily> = spine.iter().map(|s| &s[slot].chain[c]).collect();
                tower.push(canonical_block(base, &fams, &face, &edges, slot, c, a, b)?);
            }
            per_slot.push(tower);
        }
        blocks.insert(face, per_slot);
    }
    PushPullThetaDiagram::new(base.clone(), width, height, edges, blocks)
}

#[allow(clippy::too_many_arguments)]
fn canonical_block(
    base: &ThetaBase,
    spine: &[&VectorFamily],
    face: &[usize],
    edges: &BTreeMap<(usize, usize), Vec<EdgeSystem>>,
    slot: usize,
    c: usize,
    a: usize,
    b: usize,
) -> Result<FamilyMap> {
    let p = base.projection(face, &[a, b]);
    let source = pullback_ls(&p, &edges[&(a, b)][slot].chain[c])?;
    let mut blocks = Vec::new();
    let mut target_dims = Vec::new();
    for x in 0..base.face_size(face) {
        let coords = base.decode(face, x);
        let src = interval_labels(base, spine, a, b, coords[0], coords[coords.len() - 1]);
        if src.len() != source.dims[x] {
            return Err(Error::DimensionMismatch("label count disagrees with the pushforward".into()));
        }
        let factors: Vec<(usize, usize, HashMap<Label, usize>)> = consecutive(face)
            .enumerate()
            .map(|(k, (i, j))| {
                let labels = interval_labels(base, spine, i, j, coords[k], coords[k + 1]);
                (i, j, labels.into_iter().enumerate().map(|(n, lab)| (lab, n)).collect())
            })
            .collect();
        let rows: usize = factors.iter().map(|f| f.2.len()).product();
        let mut m = Matrix::zeros(rows, src.len());
        for (col, (y, bs)) in src.iter().enumerate() {
            if face.iter().zip(&coords).any(|(&s, &xs)| y[s - a] != xs) {
                continue;
            }
            let mut row = 0;
            for (i, j, index) in &factors {
                let key = (y[i - a..=j - a].to_vec(), bs[i - a..j - a].to_vec());
                row = row * index.len() + index[&key];
            }
            m.set(row, col, Q::one());
        }
        target_dims.push(rows);
        blocks.push(m);
    }
    FamilyMap::new(source, VectorFamily::new(target_dims), blocks)
}

/// Replaces every non-spine edge system by the target of the given
/// invertible maps and conjugates the structure maps accordingly.
pub fn transport(d: &PushPullThetaDiagram, psi: &EdgeMaps) -> Result<PushPullThetaDiagram> {
    let map = |i: usize, j: usize, slot: usize, c: usize| -> Result<FamilyMap> {
        if d.is_spine_edge(i, j) {
            Ok(FamilyMap::identity(d.family(i, j, slot, c)))
        } else {
            let m = psi
                .get(&(i, j))
                .and_then(|v| v.get(slot))
                .and_then(|v| v.get(c))
                .ok_or_else(|| Error::SizeMismatch(format!("no map for edge ({i}, {j})")))?;
            if m.source != *d.family(i, j, slot, c) {
                return Err(Error::DimensionMismatch(format!("map on ({i}, {j}) does not start at the edge system")));
            }
            Ok(m.clone())
        }
    };
    let inv = |m: FamilyMap| m.inverse().ok_or_else(|| Error::InvalidMap("transport needs invertible maps".into()));
    let mut edges = BTreeMap::new();
    for (&(i, j), sys) in &d.edges {
        let mut slots = Vec::new();
        for (slot, s) in sys.iter().enumerate() {
            let chain = (0..=d.height).map(|c| Ok(map(i, j, slot, c)?.target)).collect::<Result<Vec<_>>>()?;
            let verticals = (0..d.height)
                .map(|c| compose(&map(i, j, slot, c + 1)?, &compose(&s.verticals[c], &inv(map(i, j, slot, c)?)?)?))
                .collect::<Result<Vec<_>>>()?;
            slots.push(EdgeSystem::new(chain, verticals)?);
        }
        edges.insert((i, j), slots);
    }
    let mut blocks = BTreeMap::new();
    for (face, per_slot) in &d.blocks {
        let [a, b] = ends(face);
        let p = d.base.projection(face, &[a, b]);
        let mut out = Vec::new();
        for (slot, tower) in per_slot.iter().enumerate() {
            let mut t = Vec::new();
            for (c, phi) in tower.iter().enumerate() {
                let after = d.target_map(face, |i, j| map(i, j, slot, c))?;
                let before = pullback_map(&p, &inv(map(a, b, slot, c)?)?)?;
                t.push(compose(&after, &compose(phi, &before)?)?);
            }
            out.push(t);
        }
        blocks.insert(face.clone(), out);
    }
    PushPullThetaDiagram::new(d.base.clone(), d.width, d.height, edges, blocks)
}

/// Result of comparing two diagrams over the same spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(EdgeMaps),
    NotIsomorphic,
    /// The solution space was too large to search exhaustively.
    Undecided,
}

/// Largest number of unknown matrix entries for the joint linear system.
pub const ISO_SEARCH_LIMIT: usize = 400;

fn non_spine_edges(d: &PushPullThetaDiagram) -> Vec<(usize, usize)> {
    d.edges.keys().copied().filter(|&(i, j)| !d.is_spine_edge(i, j)).collect()
}

/// Entrywise equations for `psi` to be a map of diagrams `f → g`.
fn residuals(f: &PushPullThetaDiagram, g: &PushPullThetaDiagram, psi: &EdgeMaps) -> Result<Vec<Q>> {
    let map = |i: usize, j: usize, slot: usize, c: usize| -> Result<FamilyMap> {
        if f.is_spine_edge(i, j) {
            Ok(FamilyMap::identity(f.family(i, j, slot, c)))
        } else {
            Ok(psi[&(i, j)][slot][c].clone())
        }
    };
    let minus = -Q::one();
    let mut out = Vec::new();
    let mut push = |lhs: &FamilyMap, rhs: &FamilyMap| -> Result<()> {
        for (x, y) in lhs.blocks.iter().zip(&rhs.blocks) {
            let diff = x.add(&y.scale(&minus))?;
            for r in 0..diff.rows() {
                for c in 0..diff.cols() {
                    out.push(diff.get(r, c).clone());
                }
            }
        }
        Ok(())
    };
    for (face, per_slot) in &f.blocks {
        let [a, b] = ends(face);
        let p = f.base.projection(face, &[a, b]);
        for slot in 0..f.width {
            for c in 0..=f.height {
                let lhs = compose(&g.blocks[face][slot][c], &pullback_map(&p, &map(a, b, slot, c)?)?)?;
                let rhs = compose(&f.target_map(face, |i, j| map(i, j, slot, c))?, &per_slot[slot][c])?;
                push(&lhs, &rhs)?;
            }
        }
    }
    for (i, j) in non_spine_edges(f) {
        for slot in 0..f.width {
            for c in 0..f.height {
                let lhs = compose(&map(i, j, slot, c + 1)?, &f.edges[&(i, j)][slot].verticals[c])?;
                let rhs = compose(&g.edges[&(i, j)][slot].verticals[c], &map(i, j, slot, c)?)?;
                push(&lhs, &rhs)?;
            }
        }
    }
    Ok(out)
}

/// Whether `psi` is an isomorphism of diagrams `f → g` fixing the spine.
pub fn is_diagram_iso(f: &PushPullThetaDiagram, g: &PushPullThetaDiagram, psi: &EdgeMaps) -> Result<bool> {
    let invertible = psi.values().flatten().flatten().all(FamilyMap::is_invertible);
    Ok(invertible && residuals(f, g, psi)?.iter().all(Zero::is_zero))
}

/// Searches for an isomorphism `f → g` that is the identity on the spine.
///
/// Each non-spine edge `(i, j)` is first solved from the face `{i..j}`
/// alone, where the equation reads `φ_g† ψ = φ_f†`. When those solutions are
/// unique they are the only candidates. Otherwise the joint system of all
/// block and vertical equations is solved exactly and small integer
/// combinations of its null space are tried.
pub fn find_iso(f: &PushPullThetaDiagram, g: &PushPullThetaDiagram) -> Result<IsoSearch> {
    if f.base != g.base || f.width != g.width || f.height != g.height {
        return Err(Error::SizeMismatch("diagrams have different shapes".into()));
    }
    for k in 0..f.level() {
        if f.edges[&(k, k + 1)] != g.edges[&(k, k + 1)] {
            return Err(Error::SpanMismatch("diagrams have different spines".into()));
        }
    }
    let pf = pushpull_maps(f)?;
    let pg = pushpull_maps(g)?;
    let mut psi = EdgeMaps::new();
    let mut unique = true;
    for (i, j) in non_spine_edges(f) {
        let face: Vec<usize> = (i..=j).collect();
        let mut per_slot = Vec::new();
        for slot in 0..f.width {
            let mut tower = Vec::new();
            for c in 0..=f.height {
                let (af, ag) = (&pf[&face][slot][c], &pg[&face][slot][c]);
                let mut blocks = Vec::new();
                for (x, y) in af.blocks.iter().zip(&ag.blocks) {
                    let mut sol = Matrix::zeros(y.cols(), x.cols());
                    for col in 0..x.cols() {
                        let rhs: Vec<Q> = (0..x.rows()).map(|r| x.get(r, col).clone()).collect();
                        let Some((part, null)) = y.solve(&rhs) else {
                            return Ok(IsoSearch::NotIsomorphic);
                        };
                        unique &= null.is_empty();
                        for (r, v) in part.into_iter().enumerate() {
                            sol.set(r, col, v);
                        }
                    }
                    blocks.push(sol);
                }
                tower.push(FamilyMap::new(af.source.clone(), ag.source.clone(), blocks)?);
            }
            per_slot.push(tower);
        }
        psi.insert((i, j), per_slot);
    }
    if unique {
        return Ok(if is_diagram_iso(f, g, &psi)? { IsoSearch::Found(psi) } else { IsoSearch::NotIsomorphic });
    }
    joint_search(f, g, &psi)
}

fn joint_search(f: &PushPullThetaDiagram, g: &PushPullThetaDiagram, shape: &EdgeMaps) -> Result<IsoSearch> {
    let slots: Vec<((usize, usize), usize, usize, usize)> = shape
        .iter()
        .flat_map(|(&e, per_slot)| {
            per_slot.iter().enumerate().flat_map(move |(s, tower)| {
                tower.iter().enumerate().flat_map(move |(c, m)| (0..m.base()).map(move |x| (e, s, c, x)))
            })
        })
        .collect();
    let unknowns: usize = slots
        .iter()
        .map(|&(e, s, c, x)| {
            let b = &shape[&e][s][c].blocks[x];
            b.rows() * b.cols()
        })
        .sum();
    if unknowns > ISO_SEARCH_LIMIT {
        return Ok(IsoSearch::Undecided);
    }
    let build = |v: &[Q]| -> EdgeMaps {
        let mut out = shape.clone();
        let mut k = 0;
        for &(e, s, c, x) in &slots {
            let b = &mut out.get_mut(&e).expect("edge")[s][c].blocks[x];
            for r in 0..b.rows() {
                for col in 0..b.cols() {
                    b.set(r, col, v[k].clone());
                    k += 1;
                }
            }
        }
        out
    };
    let zero = vec![Q::zero(); unknowns];
    let r0 = residuals(f, g, &build(&zero))?;
    let mut columns = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let mut e = zero.clone();
        e[k] = Q::one();
        let rk = residuals(f, g, &build(&e))?;
        columns.push(rk.iter().zip(&r0).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    let system = Matrix::from_fn(r0.len(), unknowns, |r, c| columns[c][r].clone());
    let rhs: Vec<Q> = r0.iter().map(|v| -v.clone()).collect();
    let Some((part, null)) = system.solve(&rhs) else {
        return Ok(IsoSearch::NotIsomorphic);
    };
    let basis: Vec<&Vec<Q>> = null.iter().take(6).collect();
    let combos = 3usize.pow(basis.len() as u32);
    for mut t in 0..combos {
        let mut v = part.clone();
        for n in &basis {
            let coeff = Q::from_integer(((t % 3) as i64 - 1).into());
            t /= 3;
            for (vi, ni) in v.iter_mut().zip(n.iter()) {
                *vi += &coeff * ni;
            }
        }
        let psi = build(&v);
        if psi.values().flatten().flatten().all(FamilyMap::is_invertible) {
            return Ok(IsoSearch::Found(psi));
        }
    }
    Ok(if null.is_empty() { IsoSearch::NotIsomorphic } else { IsoSearch::Undecided })
}
