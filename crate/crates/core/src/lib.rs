//! Exact multiple-point manifolds of self-transverse immersions.
//!
//! Two universes are supported: closed multicurves on square-tiled surfaces
//! and triangulated closed surfaces immersed in the flat 3-torus. For both,
//! the crate extracts the double (and triple) point manifolds with their
//! preimage bookkeeping and checks Herbert's formula
//! `f* n_r = m_{r+1} + e ∪ m_r` by mod-2 evaluation.

pub mod bordism;
pub mod curves2d;
pub mod exactgeom;
pub mod generate;
pub mod herbert;
pub mod scene;
pub mod surface2d;
pub mod surfaces3d;
mod violation;

pub use violation::{Violation, ViolationKind};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The scalar used everywhere outside the generic geometry layer.
pub type Rational = BigRational;
pub type Point2 = exactgeom::Point2<Rational>;
pub type Point3 = exactgeom::Point3<Rational>;
pub type Segment2 = exactgeom::Segment2<Rational>;
pub type Triangle3 = exactgeom::Triangle3<Rational>;

/// `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for building a [`Point2`] from small fractions.
pub fn p2(x: (i64, i64), y: (i64, i64)) -> Point2 {
    Point2::new(rat(x.0, x.1), rat(y.0, y.1))
}
