//! Generalized spans of finite sets over products of Σ and Θ posets.

mod decorated;
mod diagram;
mod shape;
mod spans;

pub use decorated::DecoratedSpanDiagram;
pub use diagram::{
    direct_replacement, product_diagram, replacement_on_top_cells, CartesianWitness, GeneralizedSpanDiagram, Reindex,
    Replacement,
};
pub use shape::SpanShape;
pub use spans::{
    associator, compose_spans, composite_pairs, is_bijection, is_span_map, left_unit_map, right_unit_map,
    DecoratedSpan, Span, SpanJson,
};
