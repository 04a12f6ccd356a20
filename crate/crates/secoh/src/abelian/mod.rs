//! Exact integer linear algebra over finitely generated abelian groups:
//! Smith normal form, kernels, cokernels and homology of presented
//! complexes.

mod fgab;
mod matrix;
pub mod homology;
pub mod snf;

pub use fgab::{FgAbGroup, GroupElement};
pub use homology::{columns_in_image, homology_at, ComplexSlice, PresentedGroup};
pub use matrix::IntMatrix;
pub use snf::{
    column_lattice_basis, cokernel_invariants, kernel_basis, snf, solve_membership, SnfResult,
    SnfSolver,
};
