//! Exact arithmetic kernel: points, circles, quadratic numbers and the
//! predicates every later stage is built on. No floating point is used in
//! any decision.

mod construct;
mod point;
mod quadratic;

pub use construct::{
    certify_lemma, circles_close, gap_lower_bound, lemma_step, perturbation_radius,
    point_on_arc_between, project_from_base, rational_point_on_circle_near, second_intersection,
    LemmaStep,
};
pub use point::{
    arc_order, orient, side_of_circle, side_of_disk, strictly_between, ArcOrder, Circle2, Point2,
    Side,
};
pub use quadratic::{
    arc_order_quad, circle_circle_intersections, strictly_between_quad, compare_quadratic, disk_boundary_intersections, quadratic_sign,
    sign_with_extra_root, Intersections, QuadPoint, Quadratic,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("point is not on the circle")]
    PointNotOnCircle,
    #[error("point lies on a disk boundary")]
    PointOnBoundary,
    #[error("no rational point found within the search budget")]
    NoRationalPointFound,
    #[error("degenerate arc: {0}")]
    DegenerateArc(String),
    #[error("epsilon must be positive")]
    InvalidEpsilon,
    #[error("invalid circle: {0}")]
    InvalidCircle(String),
    #[error("lemma step could not be certified: {0}")]
    LemmaFailed(String),
}
