//! Deformations of a complex structure: first-order classes, Maurer-Cartan
//! extension, the first-order obstruction map on Dolbeault cohomology,
//! extension of classes along a family and the resulting jump accounting.

mod extend;
mod family;
mod jump;
mod obstruction;

pub use extend::{extend_class, Extension};
pub use family::{mc_extend, validate_first_order, vector_delbar, DeformationFamily, KSClass, McOutcome};
pub use jump::{coframe_determinant, jump_report, obstruction_maps, oracle_along_ray, oracle_hodge_at_point, JumpRow, JumpTable};
pub use obstruction::{
    frolicher_d1, o1_form, obstruction_o1, parallelisable_witness, second_class_subspace, ObstructionReport, SecondClassSubspace, Witness,
};
