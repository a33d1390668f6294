//! Invariants, the ideal they generate, and harmonic polynomials.
//!
//! The central object is [`Harmonics`], which caches for one group the
//! invariant degrees, the graded pieces of the ideal `F` and the harmonic space
//! `H`, and splits polynomials along `S(V*) = H ⊕ F`.

mod averaging;
mod graded;
mod harmonics;
mod molien;

pub use averaging::{fixed_point_basis, invariant_basis, reynolds, GroupAction};
pub use graded::GradedBasis;
pub use harmonics::{harmonic_basis, ideal_component, project_to_h, HarmonicMethod, Harmonics};
pub use molien::{invariant_degrees, molien, poincare_from_degrees};
