//! Finite matrix groups generated by reflections.
//!
//! [`ReflectionGroup`] stores the full element list of a finite subgroup of
//! `GL(V)` together with its reflections, reflecting hyperplanes and the skew
//! polynomial `Π`. [`catalog`] builds the standard fixtures by name.

mod catalog;
mod closure;

pub use catalog::{catalog, catalog_with_cap, gmpn_generators, standard_fixtures, CatalogSpec, GroupFile};
pub use closure::{Hyperplane, Reflection, ReflectionGroup, DEFAULT_GROUP_CAP};
