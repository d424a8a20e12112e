//! Exact computation of invariant Dolbeault cohomology of nilmanifolds with
//! nilpotent complex structure, and the obstruction calculus for jumping of
//! Hodge numbers under small deformations.
//!
//! Module map:
//! - [`coeff`]: Q(i), polynomials in deformation parameters, truncated jets.
//! - [`exterior`]: invariant forms, `d = del + delbar`, contraction, deformed coframes.
//! - [`linalg`]: exact kernels, ranks (generic and specialized) and cohomology.
//! - [`defo`]: Kodaira-Spencer classes, Maurer-Cartan extension, first-order
//!   obstructions, Frölicher `d1`, jump tables and the deformed-structure oracle.
//! - [`lab`]: obstruction maps on a finite complex of free modules over a
//!   one-parameter base.

pub mod coeff;
pub mod defo;
mod error;
pub mod exterior;
pub mod lab;
pub mod linalg;

pub use error::Error;
