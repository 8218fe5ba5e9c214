//! `spancalc compose`: operands, results and the witness section.

use serde::Deserialize;
use serde_json::{json, Value};

use spancalc::pushpull::{
    compose2_horizontal, compose2_vertical, horizontal_data, intersection, triple_intersection, TwoMorphism,
    VectorFamily,
};
use spancalc::span::{compose_spans, composite_pairs, is_bijection, Span, SpanJson};
use spancalc::{Error, Result};

use crate::{parse_as, ComposeKind, Failure};

/// A local system given either as a bare `|L| x |M|` table over point feet
/// or on explicit spans, zero off the intersection.
#[derive(Deserialize)]
#[serde(untagged)]
enum Operand {
    Table(Vec<Vec<usize>>),
    OnSpans { l: SpanJson, m: SpanJson, dims: Vec<Vec<usize>> },
}

fn split(inputs: &[Value]) -> std::result::Result<(Value, Value), Failure> {
    match inputs {
        [a, b] => Ok((a.clone(), b.clone())),
        [one] => {
            let first = one.get("first").cloned();
            let second = one.get("second").cloned();
            match (first, second) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(Error::Parse("a single input needs \"first\" and \"second\"".into()).into()),
            }
        }
        _ => Err(Error::Parse("expected one or two inputs".into()).into()),
    }
}

pub fn compose(kind: ComposeKind, inputs: &[Value]) -> std::result::Result<Value, Failure> {
    let (a, b) = split(inputs)?;
    Ok(match kind {
        ComposeKind::Spans => {
            let s1 = Span::from_json(&parse_as(a, "first span")?)?;
            let s2 = Span::from_json(&parse_as(b, "second span")?)?;
            spans(&s1, &s2)?
        }
        ComposeKind::Vertical | ComposeKind::Horizontal => {
            let (x, y) = match (parse_as::<Operand>(a, "first operand")?, parse_as::<Operand>(b, "second operand")?) {
                (Operand::Table(p), Operand::Table(q)) if matches!(kind, ComposeKind::Vertical) => {
                    let x = over_points(&p, "l", "m")?;
                    let y = TwoMorphism::new(x.m.clone(), over_points(&q, "m", "n")?.m, VectorFamily::new(q.concat()))?;
                    (x, y)
                }
                (p, q) => (p.morphism("l", "m")?, q.morphism("p", "q")?),
            };
            if matches!(kind, ComposeKind::Vertical) {
                vertical(&x, &y)?
            } else {
                horizontal(&x, &y)?
            }
        }
    })
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn over_points(table: &[Vec<usize>], l: &str, m: &str) -> Result<TwoMorphism> {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    if table.iter().any(|r| r.len() != cols) {
        return Err(Error::SizeMismatch("ragged dimension table".into()));
    }
    let pt = vec!["pt".to_string()];
    let span =
        |apex: Vec<String>| Span::new(pt.clone(), pt.clone(), apex.clone(), vec![0; apex.len()], vec![0; apex.len()]);
    TwoMorphism::new(span(names(l, rows))?, span(names(m, cols))?, VectorFamily::new(table.concat()))
}

impl Operand {
    fn morphism(self, l: &str, m: &str) -> Result<TwoMorphism> {
        match self {
            Operand::Table(t) => over_points(&t, l, m),
            Operand::OnSpans { l, m, dims } => {
                let (l, m) = (Span::from_json(&l)?, Span::from_json(&m)?);
                if dims.len() != l.apex.len() || dims.iter().any(|r| r.len() != m.apex.len()) {
                    return Err(Error::SizeMismatch(format!("dims must be {} x {}", l.apex.len(), m.apex.len())));
                }
                let int = intersection(&l, &m)?;
                let mut total = 0;
                let payload: Vec<usize> = int.iter().map(|&(a, b)| dims[a][b]).collect();
                for row in &dims {
                    total += row.iter().sum::<usize>();
                }
                if total != payload.iter().sum::<usize>() {
                    return Err(Error::DimensionMismatch("nonzero dimension off the intersection".into()));
                }
                TwoMorphism::new(l, m, VectorFamily::new(payload))
            }
        }
    }
}

fn spans(s1: &Span, s2: &Span) -> Result<Value> {
    let composite = compose_spans(s1, s2)?;
    let pairs = composite_pairs(s1, s2);
    let mut witness = json!({
        "apex_pairs": pairs.iter().map(|&(a, b)| [&s1.apex[a], &s2.apex[b]]).collect::<Vec<_>>(),
    });
    let is_unit = |s: &Span| s.left == s.right && s.left_map == s.right_map && is_bijection(&s.left_map, s.left.len());
    if is_unit(s2) {
        let map: Vec<[&String; 2]> =
            pairs.iter().enumerate().map(|(k, &(a, _))| [&composite.apex[k], &s1.apex[a]]).collect();
        witness["right_unit"] = json!(map);
    }
    if is_unit(s1) {
        let map: Vec<[&String; 2]> =
            pairs.iter().enumerate().map(|(k, &(_, b))| [&composite.apex[k], &s2.apex[b]]).collect();
        witness["left_unit"] = json!(map);
    }
    Ok(json!({ "kind": "spans", "result": composite.to_json(), "witness": witness }))
}

fn vertical(x: &TwoMorphism, y: &TwoMorphism) -> Result<Value> {
    let t = triple_intersection(x, y)?;
    let result = compose2_vertical(x, y)?;
    let triples: Vec<Value> = t
        .triples
        .iter()
        .enumerate()
        .map(|(k, &(a, b, c))| {
            json!({
                "l": x.l.apex[a],
                "m": x.m.apex[b],
                "n": y.m.apex[c],
                "dim": x.payload.dims[t.i_n[k]] * y.payload.dims[t.i_l[k]],
                "lands_in": t.i_m[k],
            })
        })
        .collect();
    let outer: Vec<[&String; 2]> =
        result.intersection.iter().map(|&(a, c)| [&result.l.apex[a], &result.m.apex[c]]).collect();
    Ok(json!({
        "kind": "vertical",
        "l": result.l.to_json(),
        "m": result.m.to_json(),
        "dims": result.dims_table(),
        "witness": { "outer_intersection": outer, "triple_intersection": triples },
    }))
}

fn horizontal(x: &TwoMorphism, y: &TwoMorphism) -> Result<Value> {
    let d = horizontal_data(x, y)?;
    let result = compose2_horizontal(x, y)?;
    let point = |m: &TwoMorphism, s: usize| {
        let (a, b) = m.intersection[s];
        [m.l.apex[a].clone(), m.m.apex[b].clone()]
    };
    let pairs: Vec<Value> = d
        .pairs
        .iter()
        .zip(&d.into_composite)
        .map(|(&(s, s2), &k)| {
            json!({
                "first": point(x, s),
                "second": point(y, s2),
                "lands_in": k,
                "dim": x.payload.dims[s] * y.payload.dims[s2],
            })
        })
        .collect();
    let hit: std::collections::BTreeSet<usize> = d.into_composite.iter().copied().collect();
    let zero: Vec<usize> = (0..d.intersection.len()).filter(|k| !hit.contains(k)).collect();
    Ok(json!({
        "kind": "horizontal",
        "l": result.l.to_json(),
        "m": result.m.to_json(),
        "dims": result.dims_table(),
        "witness": { "pairs": pairs, "extended_by_zero": zero },
    }))
}
