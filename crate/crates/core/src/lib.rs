//! Symbolic engine for weak reductions of Heegaard splittings.
//!
//! Splittings are modeled as finite annotated disk systems over a genus-n
//! surface. The crate computes the generalized splittings obtained by weak
//! reduction, classifies them, decomposes the restricted disk complex into
//! equivalent clusters, and runs the criticality and genus-3 analyses, with an
//! independent closure-based oracle for every cluster computation.

pub mod analysis;
pub mod complex;
pub mod equivalence;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod reduction;
pub mod report;
pub mod summaries;
pub mod surface;

pub use model::{CutoffCategory, Side, SplittingModel};
pub use surface::{ScarTag, Surface, SurfacePiece};

#[cfg(test)]
mod thread_safety {
    // all engine values are immutable after construction and cross threads
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::SplittingModel>();
        assert_send_sync::<crate::Surface>();
        assert_send_sync::<crate::reduction::GhsResult>();
        assert_send_sync::<crate::complex::ClusterSet>();
        assert_send_sync::<crate::analysis::PhiTable>();
    }
}
