//! Symmetrization operators on convex bodies in ℝ² and ℝ³.
//!
//! Bodies are polytopes given by their extreme points, support functions
//! sampled on a direction grid, or bodies of revolution given by a concave
//! radius profile. The [`symmetrize`] module maps bodies to symmetrals with
//! respect to a linear subspace; [`harness`] checks their properties on
//! seeded random bodies and [`convergence`] iterates them.

pub mod analytic;
pub mod convergence;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod symmetrize;

pub use error::{Error, Result};
pub use geometry::*;
