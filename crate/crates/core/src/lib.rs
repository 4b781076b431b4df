//! Combinatorial isolating blocks of surface flows and their Conley indices.
//!
//! A block is a triangulated surface with labeled boundary. From it the
//! crate computes regularizing surgery, the Conley index in normal form,
//! the Z₂ cohomology ring of the index pair, and several consistency
//! checks on the dynamics (fixed points, duality, continuation).

pub mod block;
pub mod builders;
pub mod conley;
pub mod gf2;
pub mod homology;
pub mod regularize;
pub mod surface;

pub use block::{
    BlockError, ExitCensus, IsolatingBlock, TransitSpine, ValidationReport, Violation,
    ViolationKind,
};
pub use conley::{
    check_continuation, classify, classify_fixed_point_free, cohomology_index, duality_check,
    fp_report, minimal_report, ring_classify, wedge, ClassificationReport, ComponentSummary,
    ConleyError, DynamicsType, IndexDescriptor,
};
pub use homology::{betti_z2, CohomologyIndex, IntersectionForm};
pub use regularize::{cut_once, regularize, RegularizeError, SurgeryTrace};
pub use surface::{Edge, Subcomplex, SurfaceComplex, SurfaceError, TopSignature, Vertex};
