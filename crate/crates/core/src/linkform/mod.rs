//! Symmetric bilinear pairings `T × T → ℚ/ℤ` on finite abelian groups:
//! construction from surgery matrices, evaluation, orthogonal complements,
//! Lagrangians, classification, and isometry search.
//!
//! The surgery construction uses `+q⁻¹ mod 1`; the opposite sign convention
//! is available through [`LinkingForm::negated`].

mod classify;
mod form;
mod isometry;
mod isotropy;
mod table;

pub use classify::{ClassificationReport, HyperbolicWitness, SplitWitness};
pub use form::LinkingForm;
