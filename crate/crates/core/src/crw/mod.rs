//! Weight-graded, ℤ/2-graded commutative DG algebras over ℚ: Koszul models of
//! intersections, weightwise cohomology, and free DG modules.

mod algebra;
mod intro;
mod json;
mod koszul;
mod module;
mod poly;

pub use algebra::{AlgebraMap, CohomologyTable, GradedDGAlgebra};
pub use intro::{
    build_intro_algebras, graded_commutative_on_generators, IntroReport, Mat2, MatrixFactorizationAlgebra, MfBasis,
};
pub use json::{algebra_from_json, algebra_to_json, AlgebraJson, GeneratorJson, IntersectionJson};
pub use koszul::{koszul_intersection, suggest_weights};
pub use module::{
    adjunction_dims, module_pullback, module_pushforward, truncated_hom_dim, AdjunctionDims, DGModule, ModuleElement,
    ModuleGenerator, TruncatedModule,
};
pub use poly::{Generator, GradedRing, Monomial, Parity, Poly};
