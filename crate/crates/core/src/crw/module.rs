use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::algebra::{AlgebraMap, CohomologyTable, GradedDGAlgebra};
use super::poly::{Monomial, Parity, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerator {
    pub parity: Parity,
    pub weight: u32,
}

/// Free DG module over a DG algebra: `d(m_j) = Σ_i d[i][j] m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGModule {
    pub over: GradedDGAlgebra,
    pub generators: Vec<ModuleGenerator>,
    pub differential: Vec<Vec<Poly>>,
}

/// An element `Σ_j c_j m_j` of a free module.
pub type ModuleElement = Vec<Poly>;

impl DGModule {
    pub fn new(over: GradedDGAlgebra, generators: Vec<ModuleGenerator>, differential: Vec<Vec<Poly>>) -> Result<Self> {
        let n = generators.len();
        if differential.len() != n || differential.iter().any(|row| row.len() != n) {
            return Err(Error::SizeMismatch("module differential must be square".into()));
        }
        let differential: Vec<Vec<Poly>> =
            differential.iter().map(|row| row.iter().map(|p| over.ring.normalize(p)).collect()).collect();
        for (i, row) in differential.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let (gi, gj) = (&generators[i], &generators[j]);
                let expected = (gj.weight as i64 - gi.weight as i64, gj.parity.flip().add(gi.parity));
                match over.ring.homogeneous_degree(entry) {
                    Some((w, p)) if (w as i64, p) == expected => {}
                    _ => {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i}, {j}) of the module differential has the wrong weight or parity"
                        )))
                    }
                }
            }
        }
        let m = DGModule { over, generators, differential };
        if !m.d_squared_zero() {
            return Err(Error::InvalidMap("module differential does not square to zero".into()));
        }
        Ok(m)
    }

    /// Free module of rank one on an even generator of weight 0.
    pub fn free_rank_one(over: GradedDGAlgebra) -> Self {
        DGModule {
            over,
            generators: vec![ModuleGenerator { parity: Parity::Even, weight: 0 }],
            differential: vec![vec![Poly::zero()]],
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn basis_element(&self, j: usize) -> ModuleElement {
        let mut e = vec![Poly::zero(); self.rank()];
        e[j] = self.over.ring.one();
        e
    }

    /// `d(a m_j) = da m_j + (-1)^{|a|} a d(m_j)`.
    pub fn d(&self, x: &ModuleElement) -> ModuleElement {
        let ring = &self.over.ring;
        let mut out = vec![Poly::zero(); self.rank()];
        for (j, a) in x.iter().enumerate() {
            out[j] = out[j].add(&self.over.d(a));
            for (m, c) in &a.terms {
                let mono = Poly::term(m.clone(), c.clone());
                let mono = if ring.monomial_parity(m).is_odd() { mono.neg() } else { mono };
                for (i, out_i) in out.iter_mut().enumerate() {
                    *out_i = out_i.add(&ring.mul(&mono, &self.differential[i][j]));
                }
            }
        }
        out
    }

    pub fn d_squared_zero(&self) -> bool {
        (0..self.rank()).all(|j| self.d(&self.d(&self.basis_element(j))).iter().all(Poly::is_zero))
    }

    pub fn truncate(&self, bound: u64) -> TruncatedModule {
        let ring = &self.over.ring;
        let mut basis: BTreeMap<(u64, Parity), Vec<(usize, Monomial)>> = BTreeMap::new();
        for w in 0..=bound {
            for p in [Parity::Even, Parity::Odd] {
                let mut b = Vec::new();
                for (j, g) in self.generators.iter().enumerate() {
                    if (g.weight as u64) <= w {
                        for a in ring.basis(w - g.weight as u64, p.add(g.parity)) {
                            b.push((j, a));
                        }
                    }
                }
                basis.insert((w, p), b);
            }
        }
        let coords = |x: &ModuleElement, key: (u64, Parity)| -> Vec<Q> {
            let index: HashMap<(usize, &Monomial), usize> =
                basis[&key].iter().enumerate().map(|(k, (j, m))| ((*j, m), k)).collect();
            let mut v = vec![Q::zero(); basis[&key].len()];
            for (j, a) in x.iter().enumerate() {
                for (m, c) in &a.terms {
                    v[index[&(j, m)]] += c.clone();
                }
            }
            v
        };
        let element = |j: usize, a: &Monomial| -> ModuleElement {
            let mut e = vec![Poly::zero(); self.rank()];
            e[j] = Poly::term(a.clone(), Q::one());
            e
        };
        let mut actions = Vec::new();
        for (gi, g) in ring.generators.iter().enumerate() {
            let gen = ring.generator(gi);
            let mut per = BTreeMap::new();
            for (&(w, p), b) in &basis {
                let to = (w + g.weight as u64, p.add(g.parity));
                if to.0 > bound {
                    continue;
                }
                let cols: Vec<Vec<Q>> = b
                    .iter()
                    .map(|(j, a)| {
                        let x = element(*j, a);
                        let gx: ModuleElement = x.iter().map(|c| ring.mul(&gen, c)).collect();
                        coords(&gx, to)
                    })
                    .collect();
                per.insert((w, p), columns(basis[&to].len(), &cols));
            }
            actions.push(per);
        }
        let mut differential = BTreeMap::new();
        for (&(w, p), b) in &basis {
            let to = (w, p.flip());
            let cols: Vec<Vec<Q>> = b.iter().map(|(j, a)| coords(&self.d(&element(*j, a)), to)).collect();
            differential.insert((w, p), columns(basis[&to].len(), &cols));
        }
        TruncatedModule {
            bound,
            dims: basis.iter().map(|(k, b)| (*k, b.len())).collect(),
            acting: ring.generators.iter().map(|g| (g.weight as u64, g.parity)).collect(),
            actions,
            differential,
        }
    }

    pub fn cohomology(&self, weight_bound: u64) -> CohomologyTable {
        self.truncate(weight_bound).cohomology()
    }
}

fn columns(rows: usize, cols: &[Vec<Q>]) -> Matrix {
    Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Weight-truncated vector-space model of a module: dimensions per
/// `(weight, parity)`, the action of each algebra generator and `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedModule {
    pub bound: u64,
    pub dims: BTreeMap<(u64, Parity), usize>,
    /// Weight and parity of each acting generator.
    pub acting: Vec<(u64, Parity)>,
    /// `actions[g][(w, p)]` maps degree `(w, p)` to `(w + wt g, p + |g|)`.
    pub actions: Vec<BTreeMap<(u64, Parity), Matrix>>,
    pub differential: BTreeMap<(u64, Parity), Matrix>,
}

impl TruncatedModule {
    pub fn dim(&self, w: u64, p: Parity) -> usize {
        self.dims.get(&(w, p)).copied().unwrap_or(0)
    }

    pub fn cohomology(&self) -> CohomologyTable {
        let rows = (0..=self.bound)
            .map(|w| {
                let re = self.differential[&(w, Parity::Even)].rank();
                let ro = self.differential[&(w, Parity::Odd)].rank();
                (w, self.dim(w, Parity::Even) - re - ro, self.dim(w, Parity::Odd) - re - ro)
            })
            .collect();
        CohomologyTable { rows }
    }
}

/// Extension of scalars along `φ`.
pub fn module_pullback(phi: &AlgebraMap, m: &DGModule) -> Result<DGModule> {
    if phi.source != m.over {
        return Err(Error::SizeMismatch("module is not over the source of the map".into()));
    }
    let differential = m.differential.iter().map(|row| row.iter().map(|p| phi.apply(p)).collect()).collect();
    DGModule::new(phi.target.clone(), m.generators.clone(), differential)
}

/// Restriction of scalars along `φ`, as a truncated model over the source.
pub fn module_pushforward(phi: &AlgebraMap, n: &DGModule, bound: u64) -> Result<TruncatedModule> {
    if phi.target != n.over {
        return Err(Error::SizeMismatch("module is not over the target of the map".into()));
    }
    let model = n.truncate(bound);
    let target = &phi.target.ring;
    // The image of a source generator acts as the matching combination of
    // target monomials; build it from the target model's generator actions.
    let mut actions = Vec::new();
    for (gi, g) in phi.source.ring.generators.iter().enumerate() {
        let mut per = BTreeMap::new();
        for (&(w, p), &dim) in &model.dims {
            let to = (w + g.weight as u64, p.add(g.parity));
            if to.0 > bound {
                continue;
            }
            let mut total = Matrix::zeros(model.dim(to.0, to.1), dim);
            for (mono, c) in &phi.images[gi].terms {
                let act = monomial_action(&model, target, mono, (w, p)).scale(c);
                total = total.add(&act)?;
            }
            per.insert((w, p), total);
        }
        actions.push(per);
    }
    Ok(TruncatedModule {
        bound,
        dims: model.dims.clone(),
        acting: phi.source.ring.generators.iter().map(|g| (g.weight as u64, g.parity)).collect(),
        actions,
        differential: model.differential.clone(),
    })
}

/// Action of a monomial `g_0^{e_0} g_1^{e_1} ...` on degree `from`: apply
/// the rightmost factor first.
fn monomial_action(
    model: &TruncatedModule,
    ring: &super::poly::GradedRing,
    mono: &[u32],
    from: (u64, Parity),
) -> Matrix {
    let mut deg = from;
    let mut acc = Matrix::identity(model.dim(from.0, from.1));
    for i in (0..mono.len()).rev() {
        for _ in 0..mono[i] {
            let g = &ring.generators[i];
            let next = (deg.0 + g.weight as u64, deg.1.add(g.parity));
            let a = &model.actions[i][&deg];
            acc = a.mul(&acc).expect("action dimensions agree");
            deg = next;
        }
    }
    acc
}

/// Dimension of the space of even, weight-preserving maps between two
/// truncated models over the same generators, commuting with the action
/// and, when `chain` is set, with `d`.
pub fn truncated_hom_dim(source: &TruncatedModule, target: &TruncatedModule, chain: bool) -> Result<usize> {
    if source.acting != target.acting || source.bound != target.bound {
        return Err(Error::SizeMismatch("models are over different generators or bounds".into()));
    }
    let keys: Vec<(u64, Parity)> = source.dims.keys().copied().collect();
    let mut offset = BTreeMap::new();
    let mut unknowns = 0;
    for k in &keys {
        offset.insert(*k, unknowns);
        unknowns += source.dim(k.0, k.1) * target.dim(k.0, k.1);
    }
    // F_k is target.dim(k) × source.dim(k), stored row-major at offset[k].
    let var = |k: (u64, Parity), r: usize, c: usize| offset[&k] + r * source.dim(k.0, k.1) + c;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    // F_to A^S - A^T F_from = 0, entrywise.
    let mut intertwine = |from: (u64, Parity), to: (u64, Parity), a_s: &Matrix, a_t: &Matrix| {
        for r in 0..target.dim(to.0, to.1) {
            for c in 0..source.dim(from.0, from.1) {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..source.dim(to.0, to.1) {
                    row[var(to, r, k)] += a_s.get(k, c).clone();
                }
                for k in 0..target.dim(from.0, from.1) {
                    row[var(from, k, c)] -= a_t.get(r, k).clone();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    };
    for (g, &(gw, gp)) in source.acting.iter().enumerate() {
        for &from in &keys {
            let to = (from.0 + gw, from.1.add(gp));
            if to.0 > source.bound {
                continue;
            }
            intertwine(from, to, &source.actions[g][&from], &target.actions[g][&from]);
        }
    }
    if chain {
        for &from in &keys {
            let to = (from.0, from.1.flip());
            intertwine(from, to, &source.differential[&from], &target.differential[&from]);
        }
    }
    if unknowns == 0 {
        return Ok(0);
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows)?.rank() };
    Ok(unknowns - rank)
}

/// Hom dimensions on both sides of the extension/restriction adjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionDims {
    pub graded: (usize, usize),
    pub chain: (usize, usize),
    /// `Σ_j dim N` in the degree of the `j`-th generator of `M`.
    pub expected_graded: usize,
}

impl AdjunctionDims {
    pub fn holds(&self) -> bool {
        self.graded.0 == self.graded.1 && self.chain.0 == self.chain.1 && self.graded.0 == self.expected_graded
    }
}

/// Compares `Hom_S(φ*M, N)` with `Hom_R(M, φ_*N)` on weight truncations.
pub fn adjunction_dims(phi: &AlgebraMap, m: &DGModule, n: &DGModule, bound: u64) -> Result<AdjunctionDims> {
    let pulled = module_pullback(phi, m)?.truncate(bound);
    let n_model = n.truncate(bound);
    let m_model = m.truncate(bound);
    let pushed = module_pushforward(phi, n, bound)?;
    let expected_graded =
        m.generators.iter().filter(|g| g.weight as u64 <= bound).map(|g| n_model.dim(g.weight as u64, g.parity)).sum();
    Ok(AdjunctionDims {
        graded: (truncated_hom_dim(&pulled, &n_model, false)?, truncated_hom_dim(&m_model, &pushed, false)?),
        chain: (truncated_hom_dim(&pulled, &n_model, true)?, truncated_hom_dim(&m_model, &pushed, true)?),
        expected_graded,
    })
}
