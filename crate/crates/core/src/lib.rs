//! Touching pairs in packings of congruent circles in the hyperbolic plane.
//!
//! The crate computes and certifies the quantitative objects around the
//! maximum number `e_d(n)` of touching pairs among `n` circles of diameter
//! `d` (curvature −1):
//!
//! - [`hyptrig`]: regular-polygon angles, tiling edge lengths `d(k)`, `d̄(k)`.
//! - [`geom`], [`penny`]: hyperboloid-model geometry, Gauss–Bonnet areas,
//!   certified minimum-distance graphs and the Oler-type inequality.
//! - [`tiling`], [`spiral`]: combinatorial `{p,q}` tilings and spiral graphs.
//! - [`sequence`]: the exact edge counts of the order-7 triangular spiral.
//! - [`bounds`]: the upper/lower bound curves for `c(d) = lim e_d(n)/n`.
//! - [`construct`], [`horocycle`]: explicit lower-bound packings.
//! - [`export`]: CSV, JSON and SVG writers used by the command-line tool.

// Negated float comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod construct;
pub mod error;
pub mod export;
pub mod geom;
pub mod horocycle;
pub mod hyptrig;
pub mod penny;
pub mod roots;
pub mod sequence;
pub mod spiral;
pub mod tiling;

pub use error::{Error, Result};
pub use geom::{Geodesic, HPoint, Isometry};
pub use hyptrig::Dist;
pub use penny::PennyGraph;
