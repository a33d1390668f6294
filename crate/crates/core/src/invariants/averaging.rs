use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::graded::GradedBasis;
use super::molien::molien;
use crate::arith::{CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::linalg::Echelon;
use crate::poly::{monomials_of_degree, MPoly, Monomial, Space, Substitution};

/// The substitutions realising every group element on one of the two symmetric algebras.
#[derive(Clone, Debug)]
pub struct GroupAction {
    space: Space,
    subs: Vec<Substitution>,
    inv_order: CycloScalar,
}

impl GroupAction {
    pub fn new(g: &ReflectionGroup, space: Space) -> Self {
        let subs = (0..g.order())
            .map(|i| Substitution::for_element(g.element(i), g.element(g.inverse_index(i)), space))
            .collect();
        GroupAction {
            space,
            subs,
            inv_order: CycloScalar::from_rational(Rational::new(
                BigInt::from(1),
                BigInt::from(g.order()),
            )),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn order(&self) -> usize {
        self.subs.len()
    }

    /// The action of the `i`-th group element.
    pub fn apply(&self, i: usize, p: &MPoly) -> MPoly {
        self.subs[i].apply(p)
    }

    pub fn substitution(&self, i: usize) -> &Substitution {
        &self.subs[i]
    }

    /// `(1/|G|) Σ_g g·P`.
    pub fn reynolds(&self, p: &MPoly) -> MPoly {
        let mut acc = MPoly::zero(p.space(), p.nvars());
        for s in &self.subs {
            for (m, c) in s.apply(p).terms() {
                acc.add_term(m.clone(), c);
            }
        }
        acc.scale(&self.inv_order)
    }

    /// Echelon basis of the degree-`d` invariants, given their dimension.
    ///
    /// Monomials are averaged in decreasing order until the span reaches `dim`.
    pub fn invariants(&self, nvars: usize, d: u32, dim: usize) -> Echelon<Monomial> {
        let mut e = Echelon::new();
        if dim == 0 {
            return e;
        }
        for m in monomials_of_degree(nvars, d) {
            let avg = self.reynolds(&MPoly::term(self.space, m, CycloScalar::one()));
            e.insert_poly(&avg);
            if e.rank() == dim {
                break;
            }
        }
        e
    }
}

/// `(1/|G|) Σ_g g·P`, on whichever algebra `P` lives in.
pub fn reynolds(g: &ReflectionGroup, p: &MPoly) -> MPoly {
    GroupAction::new(g, p.space()).reynolds(p)
}

/// Echelon basis of the degree-`d` invariants in `space`.
pub fn invariant_basis(g: &ReflectionGroup, space: Space, d: u32) -> Vec<MPoly> {
    let dim = molien_dim(g, d);
    GroupAction::new(g, space)
        .invariants(g.dim(), d, dim)
        .polys(space, g.dim())
}

pub(crate) fn molien_dim(g: &ReflectionGroup, d: u32) -> usize {
    let c = molien(g, d as usize).coeff(d as usize).cloned().expect("within truncation");
    c.to_integer().try_into().expect("dimension fits")
}

/// The `K`-fixed part of a `K`-stable graded space, degree by degree.
///
/// Each degree is checked for stability under the generators of `K` first;
/// the fixed vectors are then the averages of the basis elements.
pub fn fixed_point_basis(space: &GradedBasis, k: &ReflectionGroup) -> Result<GradedBasis> {
    let Some(first) = space.all().next() else {
        return Ok(GradedBasis::new());
    };
    let (sp, nvars) = (first.space(), first.nvars());
    if nvars != k.dim() {
        return Err(Error::usage("subgroup dimension does not match the space"));
    }
    let action = GroupAction::new(k, sp);
    let gen_idx: Vec<usize> = k
        .generators()
        .iter()
        .map(|g| k.index_of(g).expect("generators are elements"))
        .collect();
    let mut out = BTreeMap::new();
    for (d, basis) in space.iter() {
        let ech = Echelon::from_polys(basis);
        for &gi in &gen_idx {
            for b in basis {
                if !ech.contains_poly(&action.apply(gi, b)) {
                    return Err(Error::usage(format!(
                        "{} does not stabilise the degree-{d} component",
                        k.name()
                    )));
                }
            }
        }
        let fixed: Vec<MPoly> = basis.iter().map(|b| action.reynolds(b)).collect();
        out.insert(d, fixed);
    }
    Ok(GradedBasis::from_spanning(sp, nvars, out))
}
