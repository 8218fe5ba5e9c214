use num_traits::One;

use super::algebra::GradedDGAlgebra;
use super::poly::{Generator, GradedRing, Monomial, Parity, Poly};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Largest weight tried per even generator when suggesting a weighting.
const SUGGEST_MAX_WEIGHT: u32 = 6;

/// Koszul model of `{eqs1 = 0} ∩ {eqs2 = 0}` inside the ambient ring.
///
/// Each element of `eqs1` either solves for a generator occurring only
/// linearly in it, or is a single monomial and becomes a relation. Each element
/// of `eqs2` adjoins an odd generator whose differential is its image.
pub fn koszul_intersection(ambient: &GradedRing, eqs1: &[Poly], eqs2: &[Poly]) -> Result<GradedDGAlgebra> {
    let all: Vec<&Poly> = eqs1.iter().chain(eqs2).collect();
    if let Some(bad) = all.iter().find(|p| !ambient.is_homogeneous(p)) {
        let hint = match suggest_weights(ambient, &all) {
            Some(ws) => format!(
                "; try weights {}",
                ambient
                    .generators
                    .iter()
                    .zip(&ws)
                    .map(|(g, w)| format!("{}={w}", g.name))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            None => String::new(),
        };
        return Err(Error::NotHomogeneous(format!("{} is not weight-homogeneous{hint}", ambient.format(bad))));
    }

    let n = ambient.len();
    // images[i]: what ambient generator i becomes after the eliminations so far
    let mut images: Vec<Poly> = (0..n).map(|i| ambient.generator(i)).collect();
    let mut eliminated = vec![false; n];
    let mut relations: Vec<Monomial> = ambient.relations.clone();
    for eq in eqs1 {
        let eq = substitute(ambient, eq, &images);
        if eq.is_zero() {
            continue;
        }
        if eq.terms.len() == 1 {
            relations.push(eq.terms.keys().next().unwrap().clone());
            continue;
        }
        let Some((v, c)) = linear_variable(ambient, &eq) else {
            return Err(Error::UnsupportedRelation(format!(
                "{} neither solves for a generator nor is a monomial",
                ambient.format(&eq)
            )));
        };
        let mut unit = vec![0; n];
        unit[v] = 1;
        let mut rest = eq.clone();
        rest.terms.remove(&unit);
        let value = rest.scale(&(-Q::one() / c));
        let mut sub: Vec<Poly> = (0..n).map(|i| ambient.generator(i)).collect();
        sub[v] = value;
        images = images.iter().map(|p| substitute(ambient, p, &sub)).collect();
        eliminated[v] = true;
    }
    if let Some(r) = relations.iter().find(|r| r.iter().zip(&eliminated).any(|(&e, &x)| x && e > 0)) {
        return Err(Error::UnsupportedRelation(format!(
            "relation {} involves an eliminated generator",
            ambient.format(&Poly::term(r.clone(), Q::one()))
        )));
    }

    let keep: Vec<usize> = (0..n).filter(|&i| !eliminated[i]).collect();
    let project = |m: &Monomial| -> Monomial { keep.iter().map(|&i| m[i]).collect() };
    let mut generators: Vec<Generator> = keep.iter().map(|&i| ambient.generators[i].clone()).collect();
    let eps_names: Vec<String> =
        if eqs2.len() == 1 { vec!["ε".into()] } else { (1..=eqs2.len()).map(|k| format!("ε{k}")).collect() };
    let mut differential = Vec::new();
    let mut eps = Vec::new();
    for (name, f) in eps_names.iter().zip(eqs2) {
        let image = substitute(ambient, f, &images);
        let (weight, parity) = ambient.homogeneous_degree(f).unwrap_or((0, Parity::Even));
        if parity.is_odd() {
            return Err(Error::NotHomogeneous(format!("{} is odd; equations must be even", ambient.format(f))));
        }
        let weight = u32::try_from(weight).map_err(|_| Error::BoundExceeded("weight overflow".into()))?;
        generators.push(Generator::odd(name, weight));
        eps.push(image);
    }
    let total = generators.len();
    let widen = |m: &Monomial| -> Monomial {
        let mut w = project(m);
        w.resize(total, 0);
        w
    };
    let relations: Vec<Monomial> = relations.iter().map(&widen).collect();
    let ring = GradedRing::new(generators, relations)?;
    differential.extend(std::iter::repeat_n(Poly::zero(), keep.len()));
    for image in eps {
        let mut p = Poly::zero();
        for (m, c) in &image.terms {
            p.add_term(widen(m), c.clone());
        }
        differential.push(p);
    }
    GradedDGAlgebra::new(ring, differential)
}

fn substitute(ring: &GradedRing, p: &Poly, images: &[Poly]) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &p.terms {
        let mut term = ring.one();
        for (i, &e) in m.iter().enumerate() {
            term = ring.mul(&term, &ring.pow(&images[i], e));
        }
        out = out.add(&term.scale(c));
    }
    ring.normalize(&out)
}

/// An even generator occurring in `p` only as a degree-one term.
fn linear_variable(ring: &GradedRing, p: &Poly) -> Option<(usize, Q)> {
    (0..ring.len()).filter(|&v| !ring.generators[v].parity.is_odd()).find_map(|v| {
        let mut unit = vec![0; ring.len()];
        unit[v] = 1;
        let c = p.terms.get(&unit)?;
        let only_there = p.terms.keys().filter(|m| m[v] > 0).count() == 1;
        only_there.then(|| (v, c.clone()))
    })
}

/// Smallest positive weights for the even generators (odd ones keep theirs)
/// making every polynomial homogeneous.
pub fn suggest_weights(ring: &GradedRing, polys: &[&Poly]) -> Option<Vec<u32>> {
    let even: Vec<usize> = (0..ring.len()).filter(|&i| !ring.generators[i].parity.is_odd()).collect();
    let mut candidates = vec![vec![]];
    for _ in &even {
        candidates = candidates
            .into_iter()
            .flat_map(|c: Vec<u32>| {
                (1..=SUGGEST_MAX_WEIGHT).map(move |w| {
                    let mut c = c.clone();
                    c.push(w);
                    c
                })
            })
            .collect();
    }
    candidates.sort_by_key(|ws| (ws.iter().sum::<u32>(), ws.clone()));
    candidates.into_iter().find_map(|ws| {
        let mut gens = ring.generators.clone();
        for (&i, &w) in even.iter().zip(&ws) {
            gens[i].weight = w;
        }
        let r = GradedRing { generators: gens, relations: ring.relations.clone() };
        polys.iter().all(|p| r.is_homogeneous(p)).then(|| r.generators.iter().map(|g| g.weight).collect())
    })
}
