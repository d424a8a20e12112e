//! Obstruction calculus on a finite complex of free modules over the
//! polynomial ring in one parameter `t`, localized at `t = 0`.

mod classify;
mod complex;
mod jets;

pub use classify::{
    classify_first_class, classify_second_class, jump_accounting, saturated_image, ClassSubspace, FirstClass, JumpAccounting, SecondClass,
};
pub use complex::{h_dims, CompositionDefect, FreeComplex, HDims};
pub use jets::{extend_step, o_n_i, o_n_q, reduce_to_primitive, rho, JetCochain, LabObstruction, Primitive, Step, TruncatedClass};
