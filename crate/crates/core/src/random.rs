//! Seeded generators for random finite test instances.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fincat::{limit, Diagram, FinCategory, Functor, Morphism};
use crate::linalg::Matrix;
use crate::pushpull::{EdgeMaps, EdgeSystem, FamilyMap, PushPullThetaDiagram, VectorFamily};
use crate::rational::q;
use crate::simplex::FinPoset;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_function<R: Rng>(rng: &mut R, dom: usize, cod: usize) -> Vec<usize> {
    (0..dom).map(|_| rng.gen_range(0..cod)).collect()
}

/// The free category on a finite acyclic graph. Morphism `a` is the identity
/// of object `a`; the others are nonempty edge paths.
#[derive(Clone, Debug)]
pub struct FreeCategory {
    pub category: FinCategory,
    pub edges: Vec<(usize, usize)>,
    pub paths: Vec<Vec<usize>>,
}

impl FreeCategory {
    /// Edges must go from lower to higher object index.
    pub fn new(objects: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(edges.iter().all(|&(a, b)| a < b && b < objects), "edges must increase");
        let mut paths: Vec<Vec<usize>> = (0..objects).map(|_| Vec::new()).collect();
        let mut morphisms: Vec<Morphism> = (0..objects).map(|a| Morphism { src: a, dst: a }).collect();
        // paths grouped by source, extended edge by edge
        for a in 0..objects {
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(a, Vec::new())];
            while let Some((at, path)) = stack.pop() {
                for (e, &(s, d)) in edges.iter().enumerate().rev() {
                    if s == at {
                        let mut p = path.clone();
                        p.push(e);
                        morphisms.push(Morphism { src: a, dst: d });
                        paths.push(p.clone());
                        stack.push((d, p));
                    }
                }
            }
        }
        let index: HashMap<(usize, Vec<usize>), usize> =
            morphisms.iter().zip(&paths).enumerate().map(|(i, (m, p))| ((m.src, p.clone()), i)).collect();
        let mut composition = Vec::new();
        for (f, mf) in morphisms.iter().enumerate() {
            for (g, mg) in morphisms.iter().enumerate() {
                if mg.src == mf.dst {
                    let mut p = paths[f].clone();
                    p.extend(&paths[g]);
                    composition.push((g, f, index[&(mf.src, p)]));
                }
            }
        }
        let category =
            FinCategory::new(objects, morphisms, (0..objects).collect(), &composition).expect("free category");
        FreeCategory { category, edges, paths }
    }

    /// A diagram from one function per generating edge.
    pub fn diagram(&self, sizes: Vec<usize>, edge_maps: &[Vec<usize>]) -> Diagram {
        let actions = self
            .paths
            .iter()
            .enumerate()
            .map(|(f, p)| {
                let src = self.category.morphism(f).src;
                (0..sizes[src]).map(|x| p.iter().fold(x, |y, &e| edge_maps[e][y])).collect()
            })
            .collect();
        Diagram::new(self.category.clone(), sizes, actions).expect("free diagrams are functors")
    }

    pub fn random_diagram<R: Rng>(&self, rng: &mut R, min_size: usize, max_size: usize) -> Diagram {
        let n = self.category.object_count();
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(min_size..=max_size)).collect();
        let maps: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|&(s, d)| if sizes[d] == 0 { Vec::new() } else { random_function(rng, sizes[s], sizes[d]) })
            .collect();
        // an empty target forces an empty source
        if self.edges.iter().any(|&(s, d)| sizes[d] == 0 && sizes[s] > 0) {
            return self.random_diagram(rng, min_size.max(1), max_size.max(1));
        }
        self.diagram(sizes, &maps)
    }

    /// A functor into `target` sending each edge to a random morphism
    /// between the images of its ends; `None` if no object assignment with
    /// nonempty homs turns up.
    pub fn random_functor<R: Rng>(&self, rng: &mut R, target: &FinCategory) -> Option<Functor> {
        let n = self.category.object_count();
        for _ in 0..50 {
            let objs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..target.object_count())).collect();
            let homs: Vec<Vec<usize>> = self.edges.iter().map(|&(s, d)| target.hom(objs[s], objs[d])).collect();
            if homs.iter().any(|h| h.is_empty()) {
                continue;
            }
            let edge_images: Vec<usize> = homs.iter().map(|h| h[rng.gen_range(0..h.len())]).collect();
            let on_morphisms = self
                .paths
                .iter()
                .enumerate()
                .map(|(f, p)| {
                    let start = target.identity(objs[self.category.morphism(f).src]);
                    p.iter().fold(start, |acc, &e| target.compose(edge_images[e], acc).expect("composable"))
                })
                .collect();
            return Some(Functor::new(&self.category, target, objs, on_morphisms).expect("free functor"));
        }
        None
    }
}

/// Random acyclic graph with edges `a -> b` for `a < b`, kept below
/// `max_morphisms` morphisms in the free category.
pub fn random_free_category<R: Rng>(rng: &mut R, objects: usize, edge_prob: f64, max_morphisms: usize) -> FreeCategory {
    loop {
        let mut edges = Vec::new();
        for a in 0..objects {
            for b in a + 1..objects {
                if rng.gen_bool(edge_prob) {
                    edges.push((a, b));
                    if rng.gen_bool(edge_prob / 4.0) {
                        edges.push((a, b));
                    }
                }
            }
        }
        if path_count(objects, &edges) <= max_morphisms {
            return FreeCategory::new(objects, edges);
        }
    }
}

fn path_count(objects: usize, edges: &[(usize, usize)]) -> usize {
    // paths ending at each object, including the empty one
    let mut ending = vec![1usize; objects];
    for b in 0..objects {
        for &(s, d) in edges {
            if d == b {
                ending[b] += ending[s];
            }
        }
    }
    ending.iter().sum()
}

pub fn random_poset<R: Rng>(rng: &mut R, objects: usize, edge_prob: f64) -> FinPoset {
    let mut edges = Vec::new();
    for a in 0..objects {
        for b in a + 1..objects {
            if rng.gen_bool(edge_prob) {
                edges.push((a, b));
            }
        }
    }
    FinPoset::from_edges(objects, &edges).expect("acyclic")
}

/// A random functor from a poset category (as built by
/// `FinCategory::from_poset`) to finite sets. Objects are filled in order of
/// how many objects lie below them; each gets up to `max_size` elements and
/// a random map to the limit of what lies strictly below.
pub fn random_poset_diagram<R: Rng>(rng: &mut R, cat: &FinCategory, min_size: usize, max_size: usize) -> Diagram {
    let n = cat.object_count();
    let below: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).filter(|&b| b != a && !cat.hom(a, b).is_empty()).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| below[a].len());
    let mut sizes = vec![0; n];
    // to_below[a][x] lists the image of x at each object of below[a]
    let mut to_below: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for &a in &order {
        let lower = &below[a];
        let families = if lower.is_empty() {
            vec![Vec::new()]
        } else {
            let (sub, inc) = Functor::full_inclusion(cat, lower);
            let d = Diagram {
                shape: sub.clone(),
                sizes: lower.iter().map(|&b| sizes[b]).collect(),
                actions: inc
                    .on_morphisms
                    .iter()
                    .map(|&f| {
                        let m = cat.morphism(f);
                        let pos = below[m.src].iter().position(|&c| c == m.dst);
                        match pos {
                            Some(p) => to_below[m.src].iter().map(|img| img[p]).collect(),
                            None => (0..sizes[m.src]).collect(),
                        }
                    })
                    .collect(),
            };
            limit(&d).apex
        };
        if families.is_empty() {
            continue;
        }
        sizes[a] = rng.gen_range(min_size..=max_size);
        to_below[a] = (0..sizes[a]).map(|_| families[rng.gen_range(0..families.len())].clone()).collect();
    }
    let actions = cat
        .morphisms()
        .iter()
        .map(|m| {
            if m.src == m.dst {
                (0..sizes[m.src]).collect()
            } else {
                let p = below[m.src].iter().position(|&c| c == m.dst).expect("below");
                to_below[m.src].iter().map(|img| img[p]).collect()
            }
        })
        .collect();
    Diagram::new(cat.clone(), sizes, actions).expect("random poset functor")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_category_of_two_parallel_edges() {
        let fc = FreeCategory::new(2, vec![(0, 1), (0, 1)]);
        assert_eq!(fc.category.morphism_count(), 4);
        assert_eq!(fc.category.hom(0, 1).len(), 2);
    }

    #[test]
    fn free_category_composes_paths() {
        let fc = FreeCategory::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(fc.category.morphism_count(), 6);
        assert_eq!(path_count(3, &fc.edges), 6);
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = random_free_category(&mut rng(3), 4, 0.5, 30);
        let b = random_free_category(&mut rng(3), 4, 0.5, 30);
        assert_eq!(a.edges, b.edges);
        let mut r = rng(5);
        let d = a.random_diagram(&mut r, 1, 3);
        d.validate().unwrap();
    }
}

/// Integer entries in `-2..=2`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    Matrix::from_fn(rows, cols, |i, j| q(entries[i * cols + j]))
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_family<R: Rng>(rng: &mut R, base: usize, max_dim: usize) -> VectorFamily {
    VectorFamily::new((0..base).map(|_| rng.gen_range(0..=max_dim)).collect())
}

pub fn random_family_map<R: Rng>(rng: &mut R, source: &VectorFamily, target: &VectorFamily) -> FamilyMap {
    let blocks = source.dims.iter().zip(&target.dims).map(|(&c, &r)| random_matrix(rng, r, c)).collect();
    FamilyMap::new(source.clone(), target.clone(), blocks).expect("shapes match")
}

/// A chain of `height + 1` random families with random vertical maps.
pub fn random_edge_system<R: Rng>(rng: &mut R, base: usize, height: usize, max_dim: usize) -> EdgeSystem {
    let chain: Vec<VectorFamily> = (0..=height).map(|_| random_family(rng, base, max_dim)).collect();
    let verticals = chain.windows(2).map(|w| random_family_map(rng, &w[0], &w[1])).collect();
    EdgeSystem::new(chain, verticals).expect("chain fits")
}

/// Random invertible maps out of every non-spine edge system of `d`.
pub fn random_edge_isos<R: Rng>(rng: &mut R, d: &PushPullThetaDiagram) -> EdgeMaps {
    d.edges
        .iter()
        .filter(|(&(i, j), _)| j > i + 1)
        .map(|(&e, sys)| {
            let maps = sys
                .iter()
                .map(|s| {
                    s.chain
                        .iter()
                        .map(|v| {
                            let blocks = v.dims.iter().map(|&n| random_invertible(rng, n)).collect();
                            FamilyMap::new(v.clone(), v.clone(), blocks).expect("square blocks")
                        })
                        .collect()
                })
                .collect();
            (e, maps)
        })
        .collect()
}
