pub mod arith;
pub mod characters;
pub mod error;
pub mod factorisation;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod weyl;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    struct Arithmetic;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    struct Polynomials;
    #[doc = include_str!("../../../book/src/groups.md")]
    struct Groups;
    #[doc = include_str!("../../../book/src/harmonics.md")]
    struct Harmonics;
    #[doc = include_str!("../../../book/src/factorisation.md")]
    struct Factorisation;
    #[doc = include_str!("../../../book/src/characters.md")]
    struct Characters;
    #[doc = include_str!("../../../book/src/counting.md")]
    struct Counting;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
