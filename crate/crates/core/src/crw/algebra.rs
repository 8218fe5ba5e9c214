use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use super::poly::{GradedRing, Monomial, Parity, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

/// A graded-commutative algebra with a weight-preserving, parity-reversing
/// derivation given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDGAlgebra {
    pub ring: GradedRing,
    pub differential: Vec<Poly>,
}

/// Cohomology dimensions per weight, `(weight, even, odd)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub rows: Vec<(u64, usize, usize)>,
}

impl CohomologyTable {
    pub fn even(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.1).collect()
    }

    pub fn odd(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.2).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,even_dim,odd_dim\n");
        for (w, e, o) in &self.rows {
            s.push_str(&format!("{w},{e},{o}\n"));
        }
        s
    }
}

impl GradedDGAlgebra {
    pub fn new(ring: GradedRing, differential: Vec<Poly>) -> Result<Self> {
        if differential.len() != ring.len() {
            return Err(Error::SizeMismatch("one differential per generator".into()));
        }
        let a = GradedDGAlgebra { ring, differential: Vec::new() };
        let differential: Vec<Poly> = differential.iter().map(|p| a.ring.normalize(p)).collect();
        for (g, dg) in a.ring.generators.iter().zip(&differential) {
            if let Some((w, p)) = a.ring.homogeneous_degree(dg) {
                if w != g.weight as u64 || p != g.parity.flip() {
                    return Err(Error::NotHomogeneous(format!(
                        "d{} must have weight {} and the opposite parity",
                        g.name, g.weight
                    )));
                }
            } else if !dg.is_zero() {
                return Err(Error::NotHomogeneous(format!("d{} mixes weights or parities", g.name)));
            }
        }
        let a = GradedDGAlgebra { ring: a.ring, differential };
        for r in &a.ring.relations {
            let image = a.d(&Poly::term(r.clone(), Q::one()));
            if !image.is_zero() && image.terms.keys().any(|m| !a.ring.is_zero_monomial(m)) {
                return Err(Error::UnsupportedRelation(format!(
                    "the ideal of {} is not closed under d",
                    a.ring.format(&Poly::term(r.clone(), Q::one()))
                )));
            }
        }
        Ok(a)
    }

    /// Zero differential.
    pub fn formal(ring: GradedRing) -> Self {
        let n = ring.len();
        GradedDGAlgebra { ring, differential: vec![Poly::zero(); n] }
    }

    pub fn d_monomial(&self, m: &[u32]) -> Poly {
        let r = &self.ring;
        let mut out = Poly::zero();
        let mut prefix: Monomial = vec![0; r.len()];
        for i in 0..r.len() {
            let e = m[i];
            if e > 0 {
                let g = &r.generators[i];
                let mut power = vec![0; r.len()];
                power[i] = e - 1;
                // d(g^e) = e g^{e-1} dg for even g, dg for odd g.
                let dpow = r.mul(&Poly::term(power, Q::from_integer(e.into())), &self.differential[i]);
                let dpow = if g.parity.is_odd() { self.differential[i].clone() } else { dpow };
                let mut suffix: Monomial = vec![0; r.len()];
                suffix[i + 1..].copy_from_slice(&m[i + 1..]);
                let term = r.mul(&r.mul(&Poly::term(prefix.clone(), Q::one()), &dpow), &Poly::term(suffix, Q::one()));
                let term = if r.monomial_parity(&prefix).is_odd() { term.neg() } else { term };
                out = out.add(&term);
            }
            prefix[i] = e;
        }
        r.normalize(&out)
    }

    pub fn d(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        out
    }

    /// `d² = 0` on generators; `d²` is a derivation, so this suffices.
    pub fn d_squared_zero(&self) -> bool {
        self.differential.iter().all(|dg| self.d(dg).is_zero())
    }

    /// Matrix of `d` from `(weight, parity)` to `(weight, parity.flip())`.
    pub fn d_matrix(&self, weight: u64, parity: Parity) -> (Vec<Monomial>, Vec<Monomial>, Matrix) {
        let src = self.ring.basis(weight, parity);
        let tgt = self.ring.basis(weight, parity.flip());
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::zeros(tgt.len(), src.len());
        for (j, m) in src.iter().enumerate() {
            for (t, c) in &self.d_monomial(m).terms {
                mat.set(index[t], j, c.clone());
            }
        }
        (src, tgt, mat)
    }

    pub fn cohomology(&self, weight_bound: u64) -> CohomologyTable {
        let rows = (0..=weight_bound)
            .map(|w| {
                let (even, _, d_even) = self.d_matrix(w, Parity::Even);
                let (odd, _, d_odd) = self.d_matrix(w, Parity::Odd);
                let (re, ro) = (d_even.rank(), d_odd.rank());
                (w, even.len() - re - ro, odd.len() - ro - re)
            })
            .collect();
        CohomologyTable { rows }
    }

    /// Dimensions of the algebra itself per weight.
    pub fn graded_dims(&self, weight_bound: u64) -> CohomologyTable {
        let rows = (0..=weight_bound)
            .map(|w| (w, self.ring.basis(w, Parity::Even).len(), self.ring.basis(w, Parity::Odd).len()))
            .collect();
        CohomologyTable { rows }
    }
}

/// A map of DG algebras given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub source: GradedDGAlgebra,
    pub target: GradedDGAlgebra,
    pub images: Vec<Poly>,
}

impl AlgebraMap {
    pub fn new(source: GradedDGAlgebra, target: GradedDGAlgebra, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.ring.len() {
            return Err(Error::SizeMismatch("one image per source generator".into()));
        }
        let images: Vec<Poly> = images.iter().map(|p| target.ring.normalize(p)).collect();
        for (g, im) in source.ring.generators.iter().zip(&images) {
            if let Some((w, p)) = target.ring.homogeneous_degree(im) {
                if w != g.weight as u64 || p != g.parity {
                    return Err(Error::NotHomogeneous(format!("image of {} changes weight or parity", g.name)));
                }
            } else if !im.is_zero() {
                return Err(Error::NotHomogeneous(format!("image of {} is not homogeneous", g.name)));
            }
        }
        let f = AlgebraMap { source, target, images };
        for r in &f.source.ring.relations {
            if !f.apply(&Poly::term(r.clone(), Q::one())).is_zero() {
                return Err(Error::InvalidMap("a relation does not map to zero".into()));
            }
        }
        for (i, dg) in f.source.differential.iter().enumerate() {
            if f.apply(dg) != f.target.d(&f.images[i]) {
                return Err(Error::InvalidMap(format!(
                    "map does not commute with d on {}",
                    f.source.ring.generators[i].name
                )));
            }
        }
        Ok(f)
    }

    pub fn identity(a: &GradedDGAlgebra) -> Self {
        AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.ring.len()).map(|i| a.ring.generator(i)).collect(),
        }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let r = &self.target.ring;
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            let mut term = r.one();
            for (i, &e) in m.iter().enumerate() {
                term = r.mul(&term, &r.pow(&self.images[i], e));
            }
            out = out.add(&term.scale(c));
        }
        r.normalize(&out)
    }
}
