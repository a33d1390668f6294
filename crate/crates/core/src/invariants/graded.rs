use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{CycloScalar, RatPoly};
use crate::linalg::Echelon;
use crate::poly::{MPoly, Monomial, Space, Substitution};

/// A graded subspace given by a reduced echelon basis in each degree.
///
/// Degrees with an empty basis may be omitted or stored as empty lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    degrees: BTreeMap<u32, Vec<MPoly>>,
}

impl GradedBasis {
    pub fn new() -> Self {
        GradedBasis {
            degrees: BTreeMap::new(),
        }
    }

    /// Reduces each degree's spanning set to canonical echelon form.
    pub fn from_spanning(space: Space, nvars: usize, spans: BTreeMap<u32, Vec<MPoly>>) -> Self {
        let degrees = spans
            .into_iter()
            .map(|(d, ps)| (d, Echelon::from_polys(&ps).polys(space, nvars)))
            .collect();
        GradedBasis { degrees }
    }

    pub(crate) fn from_echelons(space: Space, nvars: usize, e: &BTreeMap<u32, Echelon<Monomial>>) -> Self {
        GradedBasis {
            degrees: e.iter().map(|(d, ech)| (*d, ech.polys(space, nvars))).collect(),
        }
    }

    pub fn degree(&self, d: u32) -> &[MPoly] {
        self.degrees.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[MPoly])> {
        self.degrees.iter().map(|(d, v)| (*d, v.as_slice()))
    }

    /// Every basis element, lowest degree first.
    pub fn all(&self) -> impl Iterator<Item = &MPoly> {
        self.degrees.values().flatten()
    }

    /// Highest degree with a nonzero component.
    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.iter().rev().find(|(_, v)| !v.is_empty()).map(|(d, _)| *d)
    }

    pub fn dim(&self, d: u32) -> usize {
        self.degree(d).len()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        match self.max_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|d| self.dim(d)).collect(),
        }
    }

    pub fn poincare(&self) -> RatPoly {
        RatPoly::from_ints(&self.dims().iter().map(|&x| x as i64).collect::<Vec<_>>())
    }

    pub fn echelon(&self, d: u32) -> Echelon<Monomial> {
        Echelon::from_polys(self.degree(d))
    }

    /// Trace of a linear substitution on the degree-`d` component, which it must preserve.
    ///
    /// The basis is reduced, so the coordinate of `σ(b)` along `b` is its coefficient at the pivot of `b`.
    pub fn trace(&self, d: u32, sigma: &Substitution) -> CycloScalar {
        let mut tr = CycloScalar::zero();
        for b in self.degree(d) {
            let (pivot, _) = b.leading_term().expect("basis vectors are nonzero");
            tr += &sigma.apply(b).coeff(pivot);
        }
        tr
    }

    /// Membership of a polynomial, checked degree by degree.
    pub fn contains(&self, p: &MPoly) -> bool {
        (0..=p.max_degree().unwrap_or(0)).all(|d| {
            let c = p.component(d);
            c.is_zero() || self.echelon(d).contains_poly(&c)
        })
    }
}

impl Default for GradedBasis {
    fn default() -> Self {
        Self::new()
    }
}
