//! Exact realizations of tree hypergraphs near a circle and of the
//! extension operation, producing point/disk configurations whose induced
//! hypergraphs are certified against their combinatorial targets.

mod extension;
mod realization;
mod state;
mod tree;

pub use extension::{
    h3_extension_plan, realize_extension, realize_h2, realize_h3, realize_h3_partial, trivial_realization, H3Progress,
};
pub use realization::{DiskRole, Realization, RealizationKind, RealizedDisk};
pub use state::{AuditOp, ConstructionState};
pub use tree::{certify_tree_realization, choose_arc_anchors, realize_tree, realize_tree_logged};

use crate::kernel::KernelError;

/// Default cap on the bit length of any coordinate numerator or denominator.
pub const DEFAULT_BUDGET_BITS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub budget_bits: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { budget_bits: DEFAULT_BUDGET_BITS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("precision budget exceeded: {bits} bits needed, budget {budget}")]
    PrecisionBudgetExceeded { bits: u64, budget: u64 },
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no free arc for anchor points")]
    NoFreeArc,
    #[error("disk has no exposed boundary point")]
    NoExposedPoint,
    #[error("invariant violated at step {step:?}: {detail}")]
    InvariantViolation { step: Option<usize>, detail: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
