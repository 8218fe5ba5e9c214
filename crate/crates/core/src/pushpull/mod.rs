//! Local systems on finite sets: pullback, pushforward, base change, and the
//! composition of 2- and 3-morphisms between spans.

mod adjunction;
mod family;
mod iso;
mod theta;
mod twomorph;

pub use adjunction::{adjunct_left, adjunct_right, check_adjunction, counit_map, unit_map, AdjunctionReport};
pub use family::{
    compose, compose_all, fibers, pullback_ls, pullback_map, pushforward_ls, pushforward_map, symmetry, tensor,
    tensor_map, FamilyMap, VectorFamily,
};
pub use iso::{base_change, projection_iso, pushforward_along_bijection, pushforward_composite_iso, PullbackSquare};
pub use theta::{
    find_iso, is_diagram_iso, is_pushpull, pushpull_maps, synthesize_filling, transport, EdgeMaps, EdgeSystem,
    IsoSearch, PushPullThetaDiagram, ThetaBase, ISO_SEARCH_LIMIT,
};
pub use twomorph::{
    compose2_horizontal, compose2_vertical, compose3, horizontal_data, horizontal_unit_chain, intersection,
    triple_intersection, vertical_left_unit_chain, vertical_right_unit_chain, Composition3, HorizontalData, IsoChain,
    ThreeMorphism, TripleIntersection, TwoMorphism,
};
