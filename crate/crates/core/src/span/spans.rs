use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A span of named finite sets `left <- apex -> right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub apex: Vec<String>,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
}

/// Wire form: feet, apex, and both legs as element names.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpanJson {
    pub feet: [Vec<String>; 2],
    pub apex: Vec<String>,
    pub left_map: Vec<String>,
    pub right_map: Vec<String>,
}

fn lookup(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Parse(format!("{name:?} is not an element of the {what}")))
}

fn check_distinct(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashMap::new();
    for n in names {
        if seen.insert(n, ()).is_some() {
            return Err(Error::Parse(format!("{what} repeats {n:?}")));
        }
    }
    Ok(())
}

impl Span {
    pub fn new(
        left: Vec<String>,
        right: Vec<String>,
        apex: Vec<String>,
        left_map: Vec<usize>,
        right_map: Vec<usize>,
    ) -> Result<Self> {
        let s = Span { left, right, apex, left_map, right_map };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_distinct(&self.left, "left foot")?;
        check_distinct(&self.right, "right foot")?;
        check_distinct(&self.apex, "apex")?;
        if self.left_map.len() != self.apex.len() || self.right_map.len() != self.apex.len() {
            return Err(Error::SpanMismatch("legs must be defined on the whole apex".into()));
        }
        if self.left_map.iter().any(|&x| x >= self.left.len()) || self.right_map.iter().any(|&x| x >= self.right.len())
        {
            return Err(Error::SpanMismatch("leg lands outside its foot".into()));
        }
        Ok(())
    }

    /// Unnamed span on `0..n` style names.
    pub fn from_sizes(left: usize, right: usize, left_map: Vec<usize>, right_map: Vec<usize>) -> Result<Self> {
        let names = |n: usize, p: &str| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let apex = names(left_map.len(), "a");
        Span::new(names(left, "x"), names(right, "y"), apex, left_map, right_map)
    }

    /// `X <- X -> X`.
    pub fn identity(foot: &[String]) -> Self {
        let n = foot.len();
        Span {
            left: foot.to_vec(),
            right: foot.to_vec(),
            apex: foot.to_vec(),
            left_map: (0..n).collect(),
            right_map: (0..n).collect(),
        }
    }

    pub fn from_json(j: &SpanJson) -> Result<Self> {
        let [left, right] = j.feet.clone();
        if j.left_map.len() != j.apex.len() || j.right_map.len() != j.apex.len() {
            return Err(Error::Parse("legs must list one foot element per apex element".into()));
        }
        let left_map = j.left_map.iter().map(|n| lookup(&left, n, "left foot")).collect::<Result<_>>()?;
        let right_map = j.right_map.iter().map(|n| lookup(&right, n, "right foot")).collect::<Result<_>>()?;
        Span::new(left, right, j.apex.clone(), left_map, right_map)
    }

    pub fn to_json(&self) -> SpanJson {
        SpanJson {
            feet: [self.left.clone(), self.right.clone()],
            apex: self.apex.clone(),
            left_map: self.left_map.iter().map(|&i| self.left[i].clone()).collect(),
            right_map: self.right_map.iter().map(|&i| self.right[i].clone()).collect(),
        }
    }
}

/// The composite `L ×_Y M` of `X <- L -> Y` and `Y <- M -> Z`, with apex
/// pairs `(l, m)` in lexicographic order, named `(l,m)`.
pub fn compose_spans(s1: &Span, s2: &Span) -> Result<Span> {
    if s1.right != s2.left {
        return Err(Error::SpanMismatch("right foot of the first span differs from left foot of the second".into()));
    }
    let pairs = composite_pairs(s1, s2);
    Ok(Span {
        left: s1.left.clone(),
        right: s2.right.clone(),
        apex: pairs.iter().map(|&(a, b)| format!("({},{})", s1.apex[a], s2.apex[b])).collect(),
        left_map: pairs.iter().map(|&(a, _)| s1.left_map[a]).collect(),
        right_map: pairs.iter().map(|&(_, b)| s2.right_map[b]).collect(),
    })
}

/// Apex elements of the composite as index pairs.
pub fn composite_pairs(s1: &Span, s2: &Span) -> Vec<(usize, usize)> {
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); s2.left.len()];
    for (b, &y) in s2.left_map.iter().enumerate() {
        over[y].push(b);
    }
    let mut out = Vec::new();
    for (a, &y) in s1.right_map.iter().enumerate() {
        for &b in &over[y] {
            out.push((a, b));
        }
    }
    out
}

/// A map of spans with the same feet: a function on apexes commuting with
/// both legs.
pub fn is_span_map(from: &Span, to: &Span, map: &[usize]) -> bool {
    from.left == to.left
        && from.right == to.right
        && map.len() == from.apex.len()
        && map.iter().enumerate().all(|(i, &j)| {
            j < to.apex.len() && to.left_map[j] == from.left_map[i] && to.right_map[j] == from.right_map[i]
        })
}

pub fn is_bijection(map: &[usize], target: usize) -> bool {
    let mut hit = vec![false; target];
    map.len() == target && map.iter().all(|&j| j < target && !std::mem::replace(&mut hit[j], true))
}

/// The apex map `S ∘ id -> S`, `(l, x) ↦ l`.
pub fn right_unit_map(s: &Span) -> Vec<usize> {
    let id = Span::identity(&s.right);
    composite_pairs(s, &id).iter().map(|&(a, _)| a).collect()
}

/// The apex map `id ∘ S -> S`, `(x, l) ↦ l`.
pub fn left_unit_map(s: &Span) -> Vec<usize> {
    let id = Span::identity(&s.left);
    composite_pairs(&id, s).iter().map(|&(_, b)| b).collect()
}

/// The apex map `(S1 ∘ S2) ∘ S3 -> S1 ∘ (S2 ∘ S3)`.
pub fn associator(s1: &Span, s2: &Span, s3: &Span) -> Result<Vec<usize>> {
    let s12 = compose_spans(s1, s2)?;
    let s23 = compose_spans(s2, s3)?;
    let p12 = composite_pairs(s1, s2);
    let p23 = composite_pairs(s2, s3);
    let left = composite_pairs(&s12, s3);
    let right = composite_pairs(s1, &s23);
    let right_index: HashMap<(usize, usize, usize), usize> =
        right.iter().enumerate().map(|(i, &(a, bc))| ((a, p23[bc].0, p23[bc].1), i)).collect();
    left.iter()
        .map(|&(ab, c)| {
            let (a, b) = p12[ab];
            right_index
                .get(&(a, b, c))
                .copied()
                .ok_or_else(|| Error::NotAPullback("triple missing on the right".into()))
        })
        .collect()
}

/// A span whose apex carries integer weights; composition adds the weights
/// of the two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedSpan {
    pub span: Span,
    pub weights: Vec<i64>,
}

impl DecoratedSpan {
    pub fn new(span: Span, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != span.apex.len() {
            return Err(Error::SpanMismatch("one weight per apex element".into()));
        }
        Ok(DecoratedSpan { span, weights })
    }

    pub fn identity(foot: &[String]) -> Self {
        DecoratedSpan { span: Span::identity(foot), weights: vec![0; foot.len()] }
    }

    pub fn compose(&self, other: &DecoratedSpan) -> Result<DecoratedSpan> {
        let span = compose_spans(&self.span, &other.span)?;
        let weights =
            composite_pairs(&self.span, &other.span).iter().map(|&(a, b)| self.weights[a] + other.weights[b]).collect();
        Ok(DecoratedSpan { span, weights })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_over_a_point() {
        let l = Span::from_sizes(2, 1, vec![0, 1], vec![0, 0]).unwrap();
        let m = Span::from_sizes(1, 1, vec![0], vec![0]).unwrap();
        let m = Span { left: l.right.clone(), ..m };
        assert_eq!(compose_spans(&l, &m).unwrap().apex.len(), 2);
    }

    #[test]
    fn foot_mismatch() {
        let l = Span::from_sizes(1, 2, vec![0], vec![0]).unwrap();
        let m = Span::from_sizes(1, 1, vec![0], vec![0]).unwrap();
        assert!(matches!(compose_spans(&l, &m), Err(Error::SpanMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = Span::from_sizes(2, 3, vec![0, 1, 1], vec![2, 0, 0]).unwrap();
        assert_eq!(Span::from_json(&s.to_json()).unwrap(), s);
        let mut bad = s.to_json();
        bad.left_map[0] = "nope".into();
        assert!(Span::from_json(&bad).is_err());
    }
}
