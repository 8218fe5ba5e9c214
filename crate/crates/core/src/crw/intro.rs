use num_traits::One;
use serde::Serialize;

use super::algebra::{CohomologyTable, GradedDGAlgebra};
use super::poly::{Generator, GradedRing, Parity, Poly};
use crate::error::{Error, Result};
use crate::rational::Q;

/// 2×2 matrix over the base ring, rows and columns indexed by the parity of
/// the two summands.
pub type Mat2 = [[Poly; 2]; 2];

/// Endomorphisms of a rank-(1|1) matrix factorization `P0 ⇄ P1` with
/// `f: P0 → P1`, `g: P1 → P0`, and the commutator differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorizationAlgebra {
    pub base: GradedRing,
    pub f: Poly,
    pub g: Poly,
}

/// The four elementary matrices, as the basis `1`-components `e00, e11` and
/// the odd ones `θ = e01`, `∂θ = e10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfBasis {
    E00,
    E01,
    E10,
    E11,
}

impl MfBasis {
    pub const ALL: [MfBasis; 4] = [MfBasis::E00, MfBasis::E01, MfBasis::E10, MfBasis::E11];

    fn index(self) -> (usize, usize) {
        match self {
            MfBasis::E00 => (0, 0),
            MfBasis::E01 => (0, 1),
            MfBasis::E10 => (1, 0),
            MfBasis::E11 => (1, 1),
        }
    }
}

impl MatrixFactorizationAlgebra {
    pub fn new(base: GradedRing, f: Poly, g: Poly) -> Self {
        MatrixFactorizationAlgebra { base, f, g }
    }

    pub fn potential(&self) -> Poly {
        self.base.mul(&self.f, &self.g)
    }

    pub fn zero(&self) -> Mat2 {
        [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]]
    }

    pub fn scalar(&self, p: &Poly) -> Mat2 {
        [[p.clone(), Poly::zero()], [Poly::zero(), p.clone()]]
    }

    pub fn one(&self) -> Mat2 {
        self.scalar(&self.base.one())
    }

    pub fn basis(&self, b: MfBasis) -> Mat2 {
        let mut m = self.zero();
        let (i, j) = b.index();
        m[i][j] = self.base.one();
        m
    }

    pub fn theta(&self) -> Mat2 {
        self.basis(MfBasis::E01)
    }

    pub fn dtheta(&self) -> Mat2 {
        self.basis(MfBasis::E10)
    }

    pub fn delta(&self) -> Mat2 {
        [[Poly::zero(), self.g.clone()], [self.f.clone(), Poly::zero()]]
    }

    pub fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let r = &self.base;
        let mut out = self.zero();
        for (i, row) in out.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                *entry = r.mul(&a[i][0], &b[0][k]).add(&r.mul(&a[i][1], &b[1][k]));
            }
        }
        out
    }

    pub fn add(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let mut out = a.clone();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][j].add(&b[i][j]);
            }
        }
        out
    }

    pub fn neg(&self, a: &Mat2) -> Mat2 {
        a.clone().map(|row| row.map(|p| p.neg()))
    }

    pub fn is_zero(&self, a: &Mat2) -> bool {
        a.iter().flatten().all(Poly::is_zero)
    }

    /// Parity of a homogeneous matrix: entry `(i, j)` has parity `i + j`.
    pub fn parity(&self, a: &Mat2) -> Option<Parity> {
        let even = a[0][1].is_zero() && a[1][0].is_zero();
        let odd = a[0][0].is_zero() && a[1][1].is_zero();
        match (even, odd) {
            (true, _) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// `dφ = δφ - (-1)^{|φ|} φδ` on each homogeneous component.
    pub fn d(&self, a: &Mat2) -> Mat2 {
        let mut even = a.clone();
        even[0][1] = Poly::zero();
        even[1][0] = Poly::zero();
        let mut odd = a.clone();
        odd[0][0] = Poly::zero();
        odd[1][1] = Poly::zero();
        let delta = self.delta();
        let de = self.add(&self.mul(&delta, &even), &self.neg(&self.mul(&even, &delta)));
        let dodd = self.add(&self.mul(&delta, &odd), &self.mul(&odd, &delta));
        self.add(&de, &dodd)
    }

    pub fn d_squared_zero(&self) -> bool {
        MfBasis::ALL.iter().all(|&b| self.is_zero(&self.d(&self.d(&self.basis(b)))))
    }

    /// Graded Leibniz rule on all pairs of basis elements.
    pub fn leibniz_holds(&self) -> bool {
        MfBasis::ALL.iter().all(|&a| {
            MfBasis::ALL.iter().all(|&b| {
                let (x, y) = (self.basis(a), self.basis(b));
                let lhs = self.d(&self.mul(&x, &y));
                let first = self.mul(&self.d(&x), &y);
                let second = self.mul(&x, &self.d(&y));
                let second = if self.parity(&x) == Some(Parity::Odd) { self.neg(&second) } else { second };
                lhs == self.add(&first, &second)
            })
        })
    }
}

/// Checks on the two example algebras for `p = x^{n+1}/(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntroReport {
    pub n: u32,
    pub a_d_squared_zero: bool,
    pub a_leibniz: bool,
    pub a_factorization: bool,
    /// `dθ = x`.
    pub a_d_theta_is_x: bool,
    /// `d∂θ = (n+1) x^n` literally.
    pub a_d_dtheta_matches: bool,
    /// `d∂θ` is a nonzero multiple of `x^n`.
    pub a_d_dtheta_proportional: bool,
    pub a_d_dtheta: String,
    pub a_theta_squared_zero: bool,
    pub a_dtheta_squared_zero: bool,
    /// `θ∂θ + ∂θθ = 1`.
    pub a_clifford: bool,
    /// `∂θθ = 1`.
    pub a_dtheta_theta_is_one: bool,
    /// `θ∂θ ≠ ±∂θθ`.
    pub a_noncommutative: bool,
    pub b_d_squared_zero: bool,
    pub b_graded_commutative: bool,
    pub b_cohomology: CohomologyTable,
}

pub fn build_intro_algebras(n: u32) -> Result<(MatrixFactorizationAlgebra, GradedDGAlgebra, IntroReport)> {
    if n < 2 {
        return Err(Error::BoundExceeded(format!("need n >= 2, got {n}")));
    }
    let base = GradedRing::new(vec![Generator::even("x", 1)], vec![])?;
    let x = base.generator(0);
    let xn = base.pow(&x, n);
    let g = xn.scale(&(Q::one() / Q::from_integer((n + 1).into())));
    let a = MatrixFactorizationAlgebra::new(base.clone(), x.clone(), g);

    let b_ring = GradedRing::new(vec![Generator::even("x", 1), Generator::odd("ε", n)], vec![])?;
    let mut xn_b = vec![0; 2];
    xn_b[0] = n;
    let b = GradedDGAlgebra::new(b_ring, vec![Poly::zero(), Poly::term(xn_b, Q::one())])?;

    let (theta, dtheta) = (a.theta(), a.dtheta());
    let d_dtheta = a.d(&dtheta);
    let target = xn.scale(&Q::from_integer((n + 1).into()));
    let diag = |m: &Mat2| -> Option<Poly> {
        (m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1]).then(|| m[0][0].clone())
    };
    let d_dtheta_scalar = diag(&d_dtheta);
    let proportional =
        d_dtheta_scalar.as_ref().is_some_and(|p| p.terms.len() == 1 && p.terms.keys().next() == Some(&vec![n]));
    let t_dt = a.mul(&theta, &dtheta);
    let dt_t = a.mul(&dtheta, &theta);
    let report = IntroReport {
        n,
        a_d_squared_zero: a.d_squared_zero(),
        a_leibniz: a.leibniz_holds(),
        a_factorization: a.mul(&a.delta(), &a.delta()) == a.scalar(&a.potential()),
        a_d_theta_is_x: a.d(&theta) == a.scalar(&x),
        a_d_dtheta_matches: d_dtheta_scalar.as_ref() == Some(&target),
        a_d_dtheta_proportional: proportional,
        a_d_dtheta: d_dtheta_scalar.map(|p| base.format(&p)).unwrap_or_else(|| "not scalar".into()),
        a_theta_squared_zero: a.is_zero(&a.mul(&theta, &theta)),
        a_dtheta_squared_zero: a.is_zero(&a.mul(&dtheta, &dtheta)),
        a_clifford: a.add(&t_dt, &dt_t) == a.one(),
        a_dtheta_theta_is_one: dt_t == a.one(),
        a_noncommutative: t_dt != dt_t && t_dt != a.neg(&dt_t),
        b_d_squared_zero: b.d_squared_zero(),
        b_graded_commutative: graded_commutative_on_generators(&b.ring),
        b_cohomology: b.cohomology(n as u64 + 2),
    };
    Ok((a, b, report))
}

/// `ab = (-1)^{|a||b|} ba` for all pairs of generators.
pub fn graded_commutative_on_generators(ring: &GradedRing) -> bool {
    (0..ring.len()).all(|i| {
        (0..ring.len()).all(|j| {
            let (a, b) = (ring.generator(i), ring.generator(j));
            let ba = ring.mul(&b, &a);
            let both_odd = ring.generators[i].parity.is_odd() && ring.generators[j].parity.is_odd();
            ring.mul(&a, &b) == if both_odd { ba.neg() } else { ba }
        })
    })
}
