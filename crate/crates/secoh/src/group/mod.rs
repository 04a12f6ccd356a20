//! Finite groups by multiplication table, module structures on abelian
//! groups and classical cocycle machinery.

mod action;
mod cocycle;
mod finite;

pub use action::GAction;
pub use cocycle::{check_cocycle3, coboundary2_classical, Cochain2, Cocycle3, CocycleWitness};
pub use finite::FiniteGroup;
