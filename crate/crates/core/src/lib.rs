//! Optimal pen designs under a fixed boundary budget.
//!
//! * [`rect_grid`]: `n`-dimensional grids of rectangular chambers under a cost
//!   budget, solved in closed form.
//! * [`polygon_chain`]: chains of regular polygons (and circles) under a
//!   perimeter budget.
//! * [`spiral_packing`]: side-minimizing spirals of triangles, squares and
//!   hexagons.
//! * [`platonic_chain`]: chains of platonic solids (and spheres) under a
//!   surface-area budget.
//! * [`threshold`]: integer crossover points of monotone rational comparisons.
//! * [`numeric_oracle`]: closed-form-free optimizer and exhaustive scans used
//!   to cross-check everything above.
//! * [`verify`]: the end-to-end check suite behind `penopt verify`.

pub mod error;
pub mod numeric_oracle;
pub mod par;
pub mod platonic_chain;
pub mod polygon_chain;
pub mod rect_grid;
pub mod spiral_packing;
pub mod threshold;
pub mod verify;

pub use error::{PenError, Result};
pub use par::Execution;
