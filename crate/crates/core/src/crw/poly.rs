use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    pub weight: u32,
}

impl Generator {
    pub fn even(name: &str, weight: u32) -> Self {
        Generator { name: name.into(), parity: Parity::Even, weight }
    }

    pub fn odd(name: &str, weight: u32) -> Self {
        Generator { name: name.into(), parity: Parity::Odd, weight }
    }
}

/// Exponent vector; odd generators appear with exponent 0 or 1.
pub type Monomial = Vec<u32>;

/// Finite sum of monomials with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn coefficient(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }
}

/// Graded-commutative polynomials in the given generators modulo a monomial
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    pub generators: Vec<Generator>,
    pub relations: Vec<Monomial>,
}

impl GradedRing {
    pub fn new(generators: Vec<Generator>, relations: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.parity == Parity::Even && g.weight == 0 {
                return Err(Error::NotHomogeneous(format!("even generator {} needs a positive weight", g.name)));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(g) = generators.iter().find(|g| !seen.insert(&g.name)) {
            return Err(Error::Parse(format!("generator {} is declared twice", g.name)));
        }
        if relations.iter().any(|r| r.len() != generators.len()) {
            return Err(Error::SizeMismatch("relation exponent vector has the wrong length".into()));
        }
        Ok(GradedRing { generators, relations })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn one(&self) -> Poly {
        Poly::term(vec![0; self.len()], Q::one())
    }

    pub fn constant(&self, c: Q) -> Poly {
        Poly::term(vec![0; self.len()], c)
    }

    pub fn generator(&self, i: usize) -> Poly {
        let mut m = vec![0; self.len()];
        m[i] = 1;
        self.normalize(&Poly::term(m, Q::one()))
    }

    pub fn is_zero_monomial(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.generators).any(|(&e, g)| g.parity.is_odd() && e > 1)
            || self.relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b))
    }

    pub fn monomial_weight(&self, m: &[u32]) -> u64 {
        m.iter().zip(&self.generators).map(|(&e, g)| e as u64 * g.weight as u64).sum()
    }

    pub fn monomial_parity(&self, m: &[u32]) -> Parity {
        let odd: u32 = m.iter().zip(&self.generators).filter(|(_, g)| g.parity.is_odd()).map(|(&e, _)| e).sum();
        if odd % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Weight and parity shared by all terms, or `None` when mixed.
    pub fn homogeneous_degree(&self, p: &Poly) -> Option<(u64, Parity)> {
        let mut it = p.terms.keys().map(|m| (self.monomial_weight(m), self.monomial_parity(m)));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        p.is_zero() || self.homogeneous_degree(p).is_some()
    }

    pub fn normalize(&self, p: &Poly) -> Poly {
        Poly {
            terms: p
                .terms
                .iter()
                .filter(|(m, _)| !self.is_zero_monomial(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product of monomials with the Koszul sign of moving odd generators
    /// of `b` past those of `a`; `None` when the product vanishes.
    pub fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(Monomial, bool)> {
        let mut swaps = 0usize;
        let mut odd_in_a_after = 0usize;
        for i in (0..self.len()).rev() {
            if self.generators[i].parity.is_odd() {
                if b[i] == 1 {
                    swaps += odd_in_a_after;
                }
                if a[i] == 1 {
                    odd_in_a_after += 1;
                }
            }
        }
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if self.is_zero_monomial(&m) {
            return None;
        }
        Some((m, swaps % 2 == 1))
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, c) in &p.terms {
            for (b, d) in &q.terms {
                if let Some((m, neg)) = self.mul_monomials(a, b) {
                    let v = c * d;
                    out.add_term(m, if neg { -v } else { v });
                }
            }
        }
        out
    }

    pub fn pow(&self, p: &Poly, e: u32) -> Poly {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, p))
    }

    /// Nonzero monomials of the given weight and parity, in lexicographic
    /// order of exponent vectors.
    pub fn basis(&self, weight: u64, parity: Parity) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        self.fill(0, weight, &mut cur, &mut out);
        out.retain(|m| self.monomial_parity(m) == parity && !self.is_zero_monomial(m));
        out.sort();
        out
    }

    fn fill(&self, i: usize, left: u64, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let g = &self.generators[i];
        let max = if g.parity.is_odd() { 1 } else { (left / g.weight as u64) as u32 };
        for e in 0..=max {
            let w = e as u64 * g.weight as u64;
            if w > left {
                break;
            }
            cur[i] = e;
            self.fill(i + 1, left - w, cur, out);
        }
        cur[i] = 0;
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .iter()
                .zip(&self.generators)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
                .collect();
            if factors.is_empty() {
                s.push_str(&format_q(&abs));
            } else {
                if !abs.is_one() {
                    let _ = write!(s, "{}*", format_q(&abs));
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    /// Parses sums of terms like `2/3*x^2*e`, `-y`, `1`.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = cleaned.chars().collect();
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' && bytes[i - 1] != '*' {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect());
        let mut out = Poly::zero();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, t.strip_prefix('+').unwrap_or(&t).to_string()),
            };
            let mut coeff = Q::one();
            let mut term = self.one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    coeff *= parse_q(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?)
                    }
                    None => (factor, 1),
                };
                let i = self.index(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                term = self.mul(&term, &self.pow(&self.generator(i), exp));
            }
            if neg {
                coeff = -coeff;
            }
            out = out.add(&term.scale(&coeff));
        }
        Ok(out)
    }
}
