//! Exact arithmetic and the geometric predicates everything else is built on.
//!
//! All types are generic over an [`ExactScalar`]; the rest of the crate
//! instantiates them with arbitrary-precision rationals.

mod offset;
mod point;
mod scalar;
mod segment;
mod separation;
mod triangle;

use thiserror::Error;

pub use offset::{miter_point, offset_point};
pub use point::{orient2d, orient3d, Point2, Point3};
pub use scalar::{format_scalar, parse_scalar, ExactScalar};
pub use segment::{seg_intersect, SegIntersection, Segment2};
pub use separation::{feature_dist_sq, min_separation, Feature};
pub use triangle::{
    locate_in_triangle2, segment_triangle_crossing, tri_tri_intersect, Degeneracy, Incidence, Incidence3,
    SegTriCrossing, TriSegment, TriTriIntersection, Triangle3,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
}
