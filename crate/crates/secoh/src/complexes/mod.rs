//! Tuple index spaces, face maps, coboundary operators and their assembly
//! into integer matrices for the homology engine.

mod cohomology;
mod delta;
mod faces;
mod system;
mod tuples;

pub use cohomology::{
    classical_cohomology, cohomology, secondary_cohomology_abelian, secondary_cohomology_triple,
    CohomologyRun,
};
pub use delta::{assemble_delta, eval_delta, eval_delta_fn, Cochain, DeltaAssembly};
pub use faces::{face_classical, face_plain, face_twisted, TwistedOps};
pub use system::{ComplexSystem, Variant, DEFAULT_AMBIENT_CEILING};
pub use tuples::{pair_count, pair_position, AbIndexer, ActionIndexer, PairIndexSpace, TupleIndex};
