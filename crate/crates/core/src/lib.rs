//! Hypergraphs realized by disks in the plane, with exact rational
//! geometry throughout.
//!
//! Geometry types are generic over [`scalar::Scalar`]; the aliases below
//! fix the exact rational instantiation that every construction uses.

pub mod clustering;
pub mod construction;
pub mod hypergraph;
pub mod io;
pub mod kernel;
pub mod polychromatic;
pub mod ranges;
pub mod scalar;
pub mod svg;

pub use kernel::KernelError;
pub use scalar::{Rational, Scalar};

pub type Point = kernel::Point2<Rational>;
pub type Circle = kernel::Circle2<Rational>;
pub type QuadraticScalar = kernel::Quadratic<Rational>;
pub type Point2f = kernel::Point2<f64>;
pub type Circle2f = kernel::Circle2<f64>;
