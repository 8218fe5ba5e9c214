//! The path 2-category, its bisimplicial nerve, labelled limits, the cube
//! construction on category nerves and the `𝒬` pipeline.

mod grid;
mod labelled;
mod monoidal;
mod objects;
mod path;

pub use grid::{grids, nerve_chains, point_count, square_n, Grid, GridSet, NO_STEP};
pub use labelled::{
    labelled_limit, labelled_limit_full, labelled_limit_nondegenerate, restrict, spine_simplex, xi, xi_simplex,
    Bisimplicial, LabelledLimit,
};
pub use monoidal::FinSymMonCat;
pub use objects::{build_cq, CqObject, SquareNerve, GRID_LIMIT};
pub use path::{
    build_path, dump_nerve, mask_to_vec, nerve, nondegenerate, nondegenerate_table, Bisimplex, NerveDump, Path2Cat,
    MAX_LEVEL,
};
