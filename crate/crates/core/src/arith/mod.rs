//! Exact scalar arithmetic.
//!
//! Everything in the crate is computed over cyclotomic fields `Q(ζ_n)`
//! ([`CycloScalar`]); generating functions live in [`RatPoly`] (dense
//! polynomials over `Q`) and [`RatSeries`] (truncated power series).

mod cyclo;
mod ratpoly;
mod rational;
mod series;

pub use cyclo::{totient, CycloScalar};
pub use ratpoly::{cyclotomic_polynomial, RatPoly};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::RatSeries;
pub(crate) use rational::int;
