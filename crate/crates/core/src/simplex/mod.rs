//! Indexing categories: Δ, Γ^op, the span posets Σ^n ⊇ Λ^n, the subset posets
//! Θ^n ⊇ Ξ^n, their pushforwards and the face functors.

mod elements;
mod monotone;
mod pointed;
mod poset;

pub use elements::{all_element_arrows, face_map, face_sigma_formula, face_theta_formula, Direction, ElementsArrow};
pub use monotone::MonotoneMap;
pub use pointed::{distribute, interval_pullback, smash_index, smash_segal, underlying_monoid, PointedMap};
pub use poset::{build_sigma, build_theta, push_sigma, push_theta, FinPoset, PosetDump, SpanPoset, SubsetPoset};
