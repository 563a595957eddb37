//! Expansion of the local complexes and of whole codes.
//!
//! Everything here is an exhaustive search over Boolean assignments with
//! exact rational arithmetic; sizes above [`Limits`](crate::Limits) are
//! refused rather than estimated.

mod frontier;
mod graph;
mod local;
mod small_set;

pub use frontier::Frontier;
pub use graph::{functional_constants, FunctionalConstants, GraphWithBoundary};
pub use local::{
    build_local_s, build_local_t, check_seam_inequalities, local_coboundary_expansion,
    LocalComplex, LocalExpansion, LocalS, LocalT, SeamReport,
};
pub use small_set::{
    check_small_set_expansion, expansion_bounds, small_set_profile, ExpansionBounds,
    SmallSetProfile, SmallSetReport,
};
