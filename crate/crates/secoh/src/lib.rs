//! Secondary cohomology of finite group data.
//!
//! The crate computes the cohomology of three families of cochain
//! complexes over a coefficient module B:
//!
//! * the complex on `Map(A^(n(n-1)/2), B)` attached to a finite abelian
//!   group A, with face maps combining triangle-indexed tuples;
//! * its twisted version for a triple (G, A, kappa) of a finite group, a
//!   G-module A and a 3-cocycle kappa, on `Map(G^n x A^(n(n-1)/2), B)`;
//! * the classical bar complex `Map(G^n, B)`.
//!
//! Differentials are lifted to integer matrices and homology is evaluated
//! exactly through Smith normal form, so results are invariant-factor
//! lists, never numerical approximations. A brute-force enumeration oracle
//! cross-checks small instances, and the `secoh` binary exposes the whole
//! pipeline on JSON problem descriptions.

pub mod abelian;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod group;
pub mod oracle;
pub mod transforms;

pub use error::{Error, Result};
