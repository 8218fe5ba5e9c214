use std::collections::HashMap;

use crate::fincat::{FinCategory, Functor};
use crate::simplex::{build_sigma, build_theta, FinPoset, SpanPoset, SubsetPoset};

/// The indexing poset `Σ^{k_1} × … × Σ^{k_m} × Θ^{l_1} × … × Θ^{l_n}` of a
/// generalized span, with its generating part `Λ × … × Ξ`.
#[derive(Clone, Debug)]
pub struct SpanShape {
    pub sigma_levels: Vec<usize>,
    pub theta_levels: Vec<usize>,
    pub sigmas: Vec<SpanPoset>,
    pub thetas: Vec<SubsetPoset>,
    pub poset: FinPoset,
    pub category: FinCategory,
    /// Coordinates of each object, Σ factors first.
    pub coords: Vec<Vec<usize>>,
    pub generating: Vec<bool>,
    arrow_index: HashMap<(usize, usize), usize>,
}

impl SpanShape {
    pub fn new(sigma_levels: &[usize], theta_levels: &[usize]) -> Self {
        let sigmas: Vec<SpanPoset> = sigma_levels.iter().map(|&k| build_sigma(k)).collect();
        let thetas: Vec<SubsetPoset> = theta_levels.iter().map(|&l| build_theta(l)).collect();
        let factors: Vec<&FinPoset> = sigmas.iter().map(|s| &s.poset).chain(thetas.iter().map(|t| &t.poset)).collect();
        let poset = FinPoset::product(&factors);
        let dims: Vec<usize> = factors.iter().map(|f| f.size()).collect();
        let coords: Vec<Vec<usize>> = (0..poset.size())
            .map(|mut x| {
                let mut c = vec![0; dims.len()];
                for i in (0..dims.len()).rev() {
                    c[i] = x % dims[i];
                    x /= dims[i];
                }
                c
            })
            .collect();
        let m = sigmas.len();
        let generating = coords
            .iter()
            .map(|c| c.iter().enumerate().all(|(i, &x)| if i < m { sigmas[i].lambda[x] } else { thetas[i - m].xi[x] }))
            .collect();
        let category = FinCategory::from_poset(&poset);
        let arrow_index = poset.all_arrows().into_iter().enumerate().map(|(k, p)| (p, k)).collect();
        SpanShape {
            sigma_levels: sigma_levels.to_vec(),
            theta_levels: theta_levels.to_vec(),
            sigmas,
            thetas,
            poset,
            category,
            coords,
            generating,
            arrow_index,
        }
    }

    pub fn size(&self) -> usize {
        self.coords.len()
    }

    pub fn factor_count(&self) -> usize {
        self.sigmas.len() + self.thetas.len()
    }

    pub fn factor_size(&self, i: usize) -> usize {
        let m = self.sigmas.len();
        if i < m {
            self.sigmas[i].objects.len()
        } else {
            self.thetas[i - m].objects.len()
        }
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords.iter().enumerate().fold(0, |acc, (i, &c)| acc * self.factor_size(i) + c)
    }

    /// The morphism `a -> b` of `category`, if any.
    pub fn morphism(&self, a: usize, b: usize) -> Option<usize> {
        self.arrow_index.get(&(a, b)).copied()
    }

    pub fn generating_objects(&self) -> Vec<usize> {
        (0..self.size()).filter(|&o| self.generating[o]).collect()
    }

    /// The full subcategory on the generating objects and its inclusion.
    pub fn generating_inclusion(&self) -> (FinCategory, Functor) {
        Functor::full_inclusion(&self.category, &self.generating_objects())
    }

    /// The top object: every coordinate at its largest element.
    pub fn top(&self) -> usize {
        self.index_of(&(0..self.factor_count()).map(|i| self.factor_size(i) - 1).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_shape_counts() {
        let s = SpanShape::new(&[2], &[1]);
        assert_eq!(s.size(), 6 * 3);
        // Λ^2 has 5 objects, Ξ^1 has 2
        assert_eq!(s.generating_objects().len(), 10);
        let top = s.top();
        assert!(s.morphism(top, 0).is_some());
        assert!(s.morphism(0, top).is_none());
    }
}
