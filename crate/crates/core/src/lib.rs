//! Certified affinity-dimension brackets for planar self-affine sets whose
//! IFS mixes invertible and rank-one affine maps.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: closed-form 2×2 singular values, the singular value function
//!   and factored rank-one products.
//! - [`ifs`]: families, words, composition, fixed points, natural projections.
//! - [`dimension`]: partition sums, conditional-norm sums and bisection
//!   brackets for `s_reg`, `s_j` and the affinity dimension.
//! - [`separation`]: convex separation certificates and admissible projections.
//! - [`attractor`]: chaos game, cylinder points, box counting, SVG rendering.
//! - [`exceptional`]: exceptional parameters where the dimension drops.
//! - [`config`] and [`cli`]: JSON configs and the subcommand driver.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod attractor;
pub mod cli;
pub mod config;
pub mod dimension;
pub mod exceptional;
pub mod ifs;
pub mod linalg;
pub mod presets;
pub mod separation;
pub mod sum;

pub use dimension::{DimensionBracket, SolverOptions};
pub use ifs::{AffineMap2, Ifs, IfsFamily, ParamPoint, RegularMap, SingularMap};
pub use linalg::{LineDir, Linear, Mat2, RankOneFactor, Vec2};
