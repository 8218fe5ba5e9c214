use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::GradedDGAlgebra;
use super::poly::{Generator, GradedRing, Parity, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub parity: Parity,
    pub weight: u32,
}

/// Algebra presentation: relations are monomials, the differential maps
/// generator names to polynomials (missing names have `d = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
}

/// Ambient ring plus the two lists of defining equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub first: Vec<String>,
    pub second: Vec<String>,
}

impl IntersectionJson {
    pub fn ambient(&self) -> Result<GradedRing> {
        ring_from(&self.generators, &self.relations)
    }

    pub fn equations(&self, ring: &GradedRing) -> Result<(Vec<Poly>, Vec<Poly>)> {
        let parse = |v: &[String]| v.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>();
        Ok((parse(&self.first)?, parse(&self.second)?))
    }
}

fn ring_from(generators: &[GeneratorJson], relations: &[String]) -> Result<GradedRing> {
    let gens =
        generators.iter().map(|g| Generator { name: g.name.clone(), parity: g.parity, weight: g.weight }).collect();
    let free = GradedRing::new(gens, vec![])?;
    let mut rels = Vec::new();
    for r in relations {
        let p = free.parse(r)?;
        // squares of odd generators already vanish
        if p.is_zero() {
            continue;
        }
        if p.terms.len() != 1 {
            return Err(Error::UnsupportedRelation(format!("{r:?} is not a single monomial")));
        }
        rels.push(p.terms.keys().next().unwrap().clone());
    }
    GradedRing::new(free.generators, rels)
}

pub fn algebra_from_json(json: &AlgebraJson) -> Result<GradedDGAlgebra> {
    let ring = ring_from(&json.generators, &json.relations)?;
    if let Some(name) = json.differential.keys().find(|k| ring.index(k).is_none()) {
        return Err(Error::Parse(format!("differential of unknown generator {name:?}")));
    }
    let differential = ring
        .generators
        .iter()
        .map(|g| json.differential.get(&g.name).map(|s| ring.parse(s)).unwrap_or_else(|| Ok(Poly::zero())))
        .collect::<Result<Vec<_>>>()?;
    GradedDGAlgebra::new(ring, differential)
}

pub fn algebra_to_json(a: &GradedDGAlgebra) -> AlgebraJson {
    let r = &a.ring;
    AlgebraJson {
        generators: r
            .generators
            .iter()
            .map(|g| GeneratorJson { name: g.name.clone(), parity: g.parity, weight: g.weight })
            .collect(),
        relations: r.relations.iter().map(|m| r.format(&Poly::term(m.clone(), num_traits::One::one()))).collect(),
        differential: r.generators.iter().zip(&a.differential).map(|(g, d)| (g.name.clone(), r.format(d))).collect(),
    }
}
