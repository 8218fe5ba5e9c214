//! Finite categories, set-valued diagrams, limits, ends, coends and right Kan
//! extensions.

mod category;
mod diagram;
mod ends;
mod kan;
mod limit;

pub use category::{FinCategory, Functor, Morphism};
pub use diagram::{cotensor, curry_bijection, Bifunctor, Diagram, FunctionSet};
pub use ends::{
    coend, end, nat_bruteforce, nat_from_end, nat_via_cone, twisted_arrow, twisted_diagram, EndResult, NatTrans,
    TwistedArrow,
};
pub use kan::{comma, right_kan, right_kan_diagram, right_kan_end, Comma};
pub use limit::{colimit, factors_uniquely, is_cone, limit, limit_bruteforce, Cone, GraphLimit, LimitResult};
