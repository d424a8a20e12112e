//! The bigraded invariant exterior algebra of a Lie algebra with complex
//! structure: forms, structure equations and their differentials, vector
//! valued forms and deformed coframes.

mod coframe;
mod form;
pub mod monomial;
mod spec;
mod vector;

pub use coframe::{deformed_coframe, DeformedStructure, FrameChange};
pub use form::{InvariantForm, ScalarForm};
pub use monomial::Mask;
pub use spec::{has_errors, ComplexStructureSpec, Diagnostic, ScalarSpec, Severity};
pub use vector::{ScalarVectorForm, VectorForm};
