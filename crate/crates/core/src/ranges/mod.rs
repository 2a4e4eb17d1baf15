//! Range spaces of points with respect to disks: induced hypergraphs,
//! enumeration of every realizable range, and the Delaunay graph.

mod disks;
mod family;
mod induced;
mod stabbed;

pub use disks::{delaunay_graph, disk_ranges, monochromatic_disk_witness};
pub use family::{RangeFamily, WitnessDisk};
pub use induced::{induced_hypergraph, verify_realization, VerifyReport};
pub use stabbed::{grid_oracle_ranges, stabbed_unit_disk_ranges};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RangeError {
    #[error("point lies on a disk boundary")]
    PointOnBoundary,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate position: {0}")]
    DegeneratePosition(String),
}
