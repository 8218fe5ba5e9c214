use super::diagram::GeneralizedSpanDiagram;
use crate::error::{Error, Result};
use crate::simplex::PointedMap;

/// A generalized span with an integer weight on every label element. The
/// weights are not constrained by the legs; only the underlying diagram is
/// required to be cartesian.
#[derive(Clone, Debug)]
pub struct DecoratedSpanDiagram {
    pub diagram: GeneralizedSpanDiagram,
    /// `weights[slot][object][x]`.
    pub weights: Vec<Vec<Vec<i64>>>,
}

impl DecoratedSpanDiagram {
    pub fn new(diagram: GeneralizedSpanDiagram, weights: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if weights.len() != diagram.width()
            || weights
                .iter()
                .zip(&diagram.slots)
                .any(|(w, d)| w.len() != d.sizes.len() || w.iter().zip(&d.sizes).any(|(v, &n)| v.len() != n))
        {
            return Err(Error::SizeMismatch("one weight per label element".into()));
        }
        if let Some(w) = diagram.cartesian_witness() {
            return Err(Error::NotAPullback(format!("underlying diagram is not cartesian at {w:?}")));
        }
        Ok(DecoratedSpanDiagram { diagram, weights })
    }

    /// Products over preimages with weights added, matching the element
    /// order of `GeneralizedSpanDiagram::gamma_act`.
    pub fn gamma_act(&self, psi: &PointedMap) -> Result<Self> {
        let diagram = self.diagram.gamma_act(psi)?;
        let weights = (1..=psi.target())
            .map(|j| {
                let pre = psi.preimage(j);
                (0..diagram.shape.size())
                    .map(|o| {
                        (0..diagram.slots[j - 1].sizes[o])
                            .map(|mut x| {
                                let mut total = 0;
                                for &i in &pre {
                                    let n = self.diagram.slots[i - 1].sizes[o];
                                    total += self.weights[i - 1][o][x % n];
                                    x /= n;
                                }
                                total
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(DecoratedSpanDiagram { diagram, weights })
    }
}
