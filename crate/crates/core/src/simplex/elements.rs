use serde::{Deserialize, Serialize};

use super::MonotoneMap;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Sigma,
    Theta,
}

/// A morphism `([m], φ) -> ([n], ψ)` in the category of elements of `Σ^•` or
/// `Θ^•`: a map `base : [n] -> [m]` with the image of `base ∘ ψ` contained in
/// the image of `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementsArrow {
    pub base: MonotoneMap,
    pub fiber_source: MonotoneMap,
    pub fiber_target: MonotoneMap,
}

impl ElementsArrow {
    pub fn new(base: MonotoneMap, fiber_source: MonotoneMap, fiber_target: MonotoneMap) -> Self {
        ElementsArrow { base, fiber_source, fiber_target }
    }

    pub fn identity(phi: MonotoneMap) -> Self {
        let base = MonotoneMap::identity(phi.target());
        ElementsArrow { base, fiber_source: phi.clone(), fiber_target: phi }
    }

    pub fn validate(&self, direction: Direction) -> Result<()> {
        let (phi, psi, base) = (&self.fiber_source, &self.fiber_target, &self.base);
        if base.target() != phi.target() || base.source() != psi.target() {
            return Err(Error::SizeMismatch(format!("base {base:?} does not join {phi:?} and {psi:?}")));
        }
        let fiber_ok = |m: &MonotoneMap| match direction {
            Direction::Sigma => m.is_inert(),
            Direction::Theta => m.is_injective(),
        };
        if !fiber_ok(phi) || !fiber_ok(psi) {
            return Err(Error::InvalidMap(format!("fiber objects {phi:?}, {psi:?} not of the right kind")));
        }
        for r in 0..=psi.source() {
            let x = base.apply(psi.apply(r));
            if !phi.values().contains(&x) {
                return Err(Error::InvalidArrow(format!("{x} lies outside the image of {phi:?}")));
            }
        }
        Ok(())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ElementsArrow) -> Result<ElementsArrow> {
        if self.fiber_target != next.fiber_source {
            return Err(Error::SizeMismatch("element arrows not composable".into()));
        }
        Ok(ElementsArrow {
            base: self.base.compose(&next.base)?,
            fiber_source: self.fiber_source.clone(),
            fiber_target: next.fiber_target.clone(),
        })
    }
}

/// `f_Σ(α)(r) = α(ψ(r)) - φ(0)`, unchecked.
pub fn face_sigma_formula(arrow: &ElementsArrow) -> Vec<usize> {
    let phi0 = arrow.fiber_source.apply(0);
    (0..=arrow.fiber_target.source())
        .map(|r| arrow.base.apply(arrow.fiber_target.apply(r)).saturating_sub(phi0))
        .collect()
}

/// `f_Θ(β)(r) = max{s | φ(s) ≤ β(ψ(r))}`, unchecked; `None` if some set is empty.
pub fn face_theta_formula(arrow: &ElementsArrow) -> Option<Vec<usize>> {
    let phi = &arrow.fiber_source;
    (0..=arrow.fiber_target.source())
        .map(|r| {
            let bound = arrow.base.apply(arrow.fiber_target.apply(r));
            (0..=phi.source()).filter(|&s| phi.apply(s) <= bound).max()
        })
        .collect()
}

/// The face functor on a valid arrow, as a map `[j] -> [i]`.
pub fn face_map(direction: Direction, arrow: &ElementsArrow) -> Result<MonotoneMap> {
    arrow.validate(direction)?;
    let values = match direction {
        Direction::Sigma => face_sigma_formula(arrow),
        Direction::Theta => face_theta_formula(arrow).ok_or_else(|| Error::InvalidArrow("empty max".into()))?,
    };
    MonotoneMap::new(arrow.fiber_target.source(), arrow.fiber_source.source(), values)
}

/// Every arrow of the category of elements between objects over `[m]` and
/// `[n]` for `m, n ≤ bound`.
pub fn all_element_arrows(direction: Direction, bound: usize) -> Vec<ElementsArrow> {
    let fibers = |n: usize| -> Vec<MonotoneMap> {
        (0..=n)
            .flat_map(|i| MonotoneMap::all_injective(i, n))
            .filter(|m| direction == Direction::Theta || m.is_inert())
            .collect()
    };
    let mut out = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            let bases = MonotoneMap::all(n, m);
            for phi in fibers(m) {
                for psi in fibers(n) {
                    for base in &bases {
                        let a = ElementsArrow::new(base.clone(), phi.clone(), psi.clone());
                        if a.validate(direction).is_ok() {
                            out.push(a);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_goes_to_identity() {
        for dir in [Direction::Sigma, Direction::Theta] {
            let phi = MonotoneMap::inert(1, 1, 3).unwrap();
            let f = face_map(dir, &ElementsArrow::identity(phi)).unwrap();
            assert!(f.is_identity());
        }
    }

    #[test]
    fn theta_formula_pointwise() {
        let arrow = ElementsArrow::new(
            MonotoneMap::identity(2),
            MonotoneMap::new(1, 2, vec![0, 2]).unwrap(),
            MonotoneMap::identity(2),
        );
        assert_eq!(face_theta_formula(&arrow), Some(vec![0, 0, 1]));
        assert!(face_map(Direction::Theta, &arrow).is_err());
    }

    #[test]
    fn sigma_agrees_with_theta_on_inert_fibers() {
        for a in all_element_arrows(Direction::Sigma, 3) {
            assert_eq!(face_map(Direction::Sigma, &a).unwrap(), face_map(Direction::Theta, &a).unwrap());
        }
    }
}
