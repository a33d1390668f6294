//! Polynomials on `V` and `V*`, square matrices, and the operations that tie
//! them together: the linear action of `GL(V)` and the apolar pairing.

mod diff;
pub(crate) mod matrix;
mod monomial;
mod mpoly;
mod substitution;

pub use diff::{diff_apply, pairing};
pub use matrix::SquareMatrix;
pub use monomial::{monomials_of_degree, Monomial};
pub use mpoly::{MPoly, Space};
pub use substitution::{act, Substitution};
