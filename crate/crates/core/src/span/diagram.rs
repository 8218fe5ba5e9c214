use std::rc::Rc;

use super::shape::SpanShape;
use crate::error::{Error, Result};
use crate::fincat::{right_kan_diagram, Diagram};
use crate::simplex::{push_sigma, push_theta, MonotoneMap, PointedMap};

/// A functor `Σ^k̄ × Θ^l̄ -> Set^t`, stored as one set-valued diagram per
/// tuple slot.
#[derive(Clone, Debug)]
pub struct GeneralizedSpanDiagram {
    pub shape: Rc<SpanShape>,
    pub slots: Vec<Diagram>,
}

/// `cr(F)` with the canonical comparison `F -> cr(F)`, given per slot and
/// object as a function on labels.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub diagram: GeneralizedSpanDiagram,
    pub comparison: Vec<Vec<Vec<usize>>>,
}

/// Where cartesianness fails: the comparison at `object` in `slot` is not a
/// bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianWitness {
    pub slot: usize,
    pub object: usize,
    pub label_size: usize,
    pub limit_size: usize,
}

/// A reindexing map in one factor of the shape.
#[derive(Clone, Debug)]
pub enum Reindex {
    Sigma(usize, MonotoneMap),
    Theta(usize, MonotoneMap),
}

impl GeneralizedSpanDiagram {
    pub fn new(shape: Rc<SpanShape>, slots: Vec<Diagram>) -> Result<Self> {
        for d in &slots {
            if d.shape.object_count() != shape.size() || d.shape.morphism_count() != shape.category.morphism_count() {
                return Err(Error::SizeMismatch("slot diagram is not over the span shape".into()));
            }
            d.validate()?;
        }
        Ok(GeneralizedSpanDiagram { shape, slots })
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }

    /// The cartesian diagram determined by labels on the generating objects.
    /// Each entry of `generating` is a diagram on `shape.generating_inclusion().0`.
    pub fn from_generating(shape: Rc<SpanShape>, generating: &[Diagram]) -> Result<Self> {
        let (gen_cat, inc) = shape.generating_inclusion();
        let mut slots = Vec::new();
        for g in generating {
            if g.shape.object_count() != gen_cat.object_count() {
                return Err(Error::SizeMismatch("generating labels do not match the shape".into()));
            }
            g.validate()?;
            slots.push(right_kan_diagram(&gen_cat, &shape.category, &inc, g).0);
        }
        Ok(GeneralizedSpanDiagram { shape, slots })
    }

    /// Restriction to the generating objects.
    pub fn generating(&self) -> Vec<Diagram> {
        let (gen_cat, inc) = self.shape.generating_inclusion();
        self.slots.iter().map(|d| d.restrict(&gen_cat, &inc.on_objects, &inc.on_morphisms)).collect()
    }

    pub fn cartesian_replacement(&self) -> Replacement {
        let (gen_cat, inc) = self.shape.generating_inclusion();
        let cat = &self.shape.category;
        let mut slots = Vec::new();
        let mut comparison = Vec::new();
        for d in &self.slots {
            let g = d.restrict(&gen_cat, &inc.on_objects, &inc.on_morphisms);
            let (ran, values) = right_kan_diagram(&gen_cat, cat, &inc, &g);
            let maps = values
                .iter()
                .enumerate()
                .map(|(b, (comma, lim))| {
                    (0..d.sizes[b])
                        .map(|x| {
                            let family: Vec<usize> = comma.objects.iter().map(|&(_, h)| d.actions[h][x]).collect();
                            lim.position(&family).expect("labels form a cone")
                        })
                        .collect()
                })
                .collect();
            slots.push(ran);
            comparison.push(maps);
        }
        Replacement { diagram: GeneralizedSpanDiagram { shape: self.shape.clone(), slots }, comparison }
    }

    /// The first slot and object where the comparison into the limit over
    /// the generating slice fails to be a bijection.
    pub fn cartesian_witness(&self) -> Option<CartesianWitness> {
        let r = self.cartesian_replacement();
        for (slot, maps) in r.comparison.iter().enumerate() {
            for (object, map) in maps.iter().enumerate() {
                let limit_size = r.diagram.slots[slot].sizes[object];
                let mut hit = vec![false; limit_size];
                let mut injective = true;
                for &y in map {
                    injective &= !std::mem::replace(&mut hit[y], true);
                }
                if !injective || map.len() != limit_size {
                    return Some(CartesianWitness { slot, object, label_size: map.len(), limit_size });
                }
            }
        }
        None
    }

    pub fn is_cartesian(&self) -> bool {
        self.cartesian_witness().is_none()
    }

    /// New slot `j` is the product of the slots in `ψ^{-1}(j)`, the empty
    /// product being a point.
    pub fn gamma_act(&self, psi: &PointedMap) -> Result<Self> {
        if psi.source() != self.width() {
            return Err(Error::SizeMismatch(format!("ψ starts at ⟨{}⟩, width is {}", psi.source(), self.width())));
        }
        let slots = (1..=psi.target())
            .map(|j| {
                let factors: Vec<&Diagram> = psi.preimage(j).iter().map(|&i| &self.slots[i - 1]).collect();
                product_diagram(&self.shape.category, &factors)
            })
            .collect();
        Ok(GeneralizedSpanDiagram { shape: self.shape.clone(), slots })
    }

    /// Reindexing along one factor. In a Σ factor this is precomposition with
    /// `α_*`; in a Θ factor precomposition with `β_*` followed by cartesian
    /// replacement.
    pub fn delta_act(&self, action: &Reindex) -> Result<Self> {
        let s = &self.shape;
        let m = s.sigmas.len();
        let (factor, map) = match action {
            Reindex::Sigma(i, a) if *i < m => (*i, a),
            Reindex::Theta(j, b) if *j < s.thetas.len() => (m + *j, b),
            _ => return Err(Error::SizeMismatch(format!("{action:?} names no factor of the shape"))),
        };
        let old_level = if factor < m { s.sigma_levels[factor] } else { s.theta_levels[factor - m] };
        if map.target() != old_level {
            return Err(Error::SizeMismatch(format!("map lands in [{}], factor has level {old_level}", map.target())));
        }
        let mut sigma_levels = s.sigma_levels.clone();
        let mut theta_levels = s.theta_levels.clone();
        let images: Vec<usize> = if factor < m {
            sigma_levels[factor] = map.source();
            let new = crate::simplex::build_sigma(map.source());
            new.objects
                .iter()
                .map(|phi| {
                    let pushed = push_sigma(map, phi)?;
                    Ok(s.sigmas[factor].index_of_map(&pushed).expect("inert map present"))
                })
                .collect::<Result<_>>()?
        } else {
            theta_levels[factor - m] = map.source();
            let new = crate::simplex::build_theta(map.source());
            new.objects
                .iter()
                .map(|set| Ok(s.thetas[factor - m].index_of(&push_theta(map, set)?).expect("subset present")))
                .collect::<Result<_>>()?
        };
        let shape = Rc::new(SpanShape::new(&sigma_levels, &theta_levels));
        let object_map: Vec<usize> = shape
            .coords
            .iter()
            .map(|c| {
                let mut old = c.clone();
                old[factor] = images[c[factor]];
                s.index_of(&old)
            })
            .collect();
        let morphism_map: Vec<usize> = shape
            .category
            .morphisms()
            .iter()
            .map(|mm| s.morphism(object_map[mm.src], object_map[mm.dst]).expect("reindexing is monotone"))
            .collect();
        let slots = self.slots.iter().map(|d| d.restrict(&shape.category, &object_map, &morphism_map)).collect();
        let pulled = GeneralizedSpanDiagram { shape, slots };
        Ok(if factor < m { pulled } else { pulled.cartesian_replacement().diagram })
    }
}

/// Pointwise product of diagrams over one shape, first factor least
/// significant.
pub fn product_diagram(shape: &crate::fincat::FinCategory, factors: &[&Diagram]) -> Diagram {
    let sizes: Vec<usize> = (0..shape.object_count()).map(|o| factors.iter().map(|d| d.sizes[o]).product()).collect();
    let actions = shape
        .morphisms()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            (0..sizes[m.src])
                .map(|mut x| {
                    let mut out = 0;
                    let mut stride = 1;
                    for d in factors {
                        let c = x % d.sizes[m.src];
                        x /= d.sizes[m.src];
                        out += d.actions[k][c] * stride;
                        stride *= d.sizes[m.dst];
                    }
                    out
                })
                .collect()
        })
        .collect();
    Diagram { shape: shape.clone(), sizes, actions }
}

/// The value of the cartesian replacement at `object` computed directly:
/// families on the top cells of its slice (edges or vertices in each Σ
/// coordinate, points in each Θ coordinate), matched on shared vertices
/// between neighbouring edges. Each family lists, per top cell in
/// lexicographic order, an element of that cell's label. Sorted.
pub fn direct_replacement(shape: &SpanShape, generating: &Diagram, object: usize) -> Vec<Vec<usize>> {
    let gen_objects = shape.generating_objects();
    let gen_index = |o: usize| gen_objects.binary_search(&o).expect("generating object");
    let (gen_cat, _) = shape.generating_inclusion();
    let c = &shape.coords[object];
    let m = shape.sigmas.len();
    let options: Vec<Vec<usize>> = c
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i < m {
                let phi = &shape.sigmas[i].objects[x];
                let (len, off) = (phi.source(), phi.apply(0));
                if len == 0 {
                    vec![shape.sigmas[i].index_of(0, off).expect("vertex")]
                } else {
                    (0..len).map(|j| shape.sigmas[i].index_of(1, off + j).expect("edge")).collect()
                }
            } else {
                let t = &shape.thetas[i - m];
                t.objects[x].iter().map(|&p| t.index_of(&[p]).expect("point")).collect()
            }
        })
        .collect();
    // top cells in lexicographic order of their positions
    let mut cells: Vec<Vec<usize>> = vec![vec![]];
    for opts in &options {
        cells = cells.iter().flat_map(|p| (0..opts.len()).map(move |j| [p.clone(), vec![j]].concat())).collect();
    }
    let cell_object: Vec<usize> = cells
        .iter()
        .map(|pos| gen_index(shape.index_of(&pos.iter().enumerate().map(|(i, &j)| options[i][j]).collect::<Vec<_>>())))
        .collect();
    // for each cell, constraints against earlier neighbours one edge back in a Σ coordinate
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); cells.len()];
    for (n, pos) in cells.iter().enumerate() {
        for i in 0..m {
            if pos[i] == 0 || options[i].len() < 2 {
                continue;
            }
            let mut prev = pos.clone();
            prev[i] -= 1;
            let p = cells.iter().position(|q| *q == prev).expect("neighbour");
            let sigma = &shape.sigmas[i];
            let shared = sigma.index_of(0, sigma.objects[options[i][pos[i]]].apply(0)).expect("shared vertex");
            let mut face = shape.coords[gen_objects[cell_object[n]]].clone();
            face[i] = shared;
            let face = gen_index(shape.index_of(&face));
            let here = gen_cat.hom(cell_object[n], face)[0];
            let there = gen_cat.hom(cell_object[p], face)[0];
            checks[n].push((p, here, there));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(cells.len());
    fill(generating, &cell_object, &checks, &mut current, &mut out);
    out
}

fn fill(
    g: &Diagram,
    cell_object: &[usize],
    checks: &[Vec<(usize, usize, usize)>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = current.len();
    if n == cell_object.len() {
        out.push(current.clone());
        return;
    }
    for x in 0..g.sizes[cell_object[n]] {
        if checks[n].iter().all(|&(p, here, there)| g.actions[here][x] == g.actions[there][current[p]]) {
            current.push(x);
            fill(g, cell_object, checks, current, out);
            current.pop();
        }
    }
}

/// Projects the generic replacement at `object` onto top-cell families in
/// the layout of `direct_replacement`, in the order of the generic labels.
pub fn replacement_on_top_cells(shape: &SpanShape, generating: &Diagram, object: usize) -> Vec<Vec<usize>> {
    let (gen_cat, inc) = shape.generating_inclusion();
    let (comma, lim) = crate::fincat::right_kan(&gen_cat, &shape.category, &inc, generating, object);
    let gen_objects = shape.generating_objects();
    // top cells: generating objects below `object` that are maximal there
    let below: Vec<usize> = comma.objects.iter().map(|&(x, _)| x).collect();
    let tops: Vec<usize> = (0..below.len())
        .filter(|&i| !below.iter().any(|&y| y != below[i] && shape.poset.arrow(gen_objects[y], gen_objects[below[i]])))
        .collect();
    let mut order = tops.clone();
    order.sort_by_key(|&i| {
        let c = &shape.coords[gen_objects[below[i]]];
        top_cell_key(shape, c)
    });
    lim.apex.iter().map(|t| order.iter().map(|&i| t[i]).collect()).collect()
}

fn top_cell_key(shape: &SpanShape, c: &[usize]) -> Vec<usize> {
    let m = shape.sigmas.len();
    c.iter()
        .enumerate()
        .map(|(i, &x)| if i < m { shape.sigmas[i].objects[x].apply(0) } else { shape.thetas[i - m].objects[x][0] })
        .collect()
}
