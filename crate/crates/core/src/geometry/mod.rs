//! Convex geometry kernel for ℝ² and ℝ³.

pub mod body;
pub mod halfspace;
pub(crate) mod hull;
pub mod polytope;
pub mod revolution;
pub mod sample;
pub mod slicing;
pub mod subspace;
pub mod tolerance;
pub mod vector;

pub use body::{
    contains, containment_margin, distance_to_ball, hausdorff_distance, intrinsic_volume_1, linear_map,
    minkowski_sum, project, reflect, support, translate, volume, ConvexBody,
};
pub use halfspace::{chebyshev_center, intersect_halfspaces, intersect_halfspaces_from, HPolytope};
pub use polytope::{convex_hull, Facet, Halfspace, VPolytope};
pub use revolution::{concavify, RevolutionProfile};
pub use sample::{DirectionGrid, SupportSample};
pub use subspace::Subspace;
pub use tolerance::ToleranceConfig;
pub use vector::{Matrix, Vector};
