//! Exact linear algebra: dense matrices over Q(i), fraction-free elimination
//! over parameter rings, cohomology of two-step complexes and the invariant
//! Dolbeault cohomology built on top of it.

mod cohomology;
mod dolbeault;
mod generic;
mod matrix;

pub use cohomology::{CohomologyBasis, Vector};
pub use dolbeault::{del_matrix, delbar_matrix, dolbeault_groups, form_basis, DolbeaultCohomology, HodgeTable};
pub use generic::{fraction_free_echelon, generic_kernel_basis, generic_rank, specialized_rank, Echelon, PolyMatrix};
pub use matrix::{Matrix, Rref, ScalarMatrix};
