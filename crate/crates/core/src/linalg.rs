//! Sparse exact row reduction.
//!
//! [`Echelon`] keeps a basis of a subspace in fully reduced row echelon form:
//! every row has leading coefficient one at its pivot (its largest key) and
//! no row has a nonzero entry in another row's pivot column. The basis is
//! therefore canonical for the subspace, and the coordinates of a member
//! vector are simply its entries at the pivots.

use std::collections::BTreeMap;

use crate::arith::CycloScalar;
use crate::poly::{MPoly, Monomial, Space};

pub type SparseVec<K> = BTreeMap<K, CycloScalar>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, factor: &CycloScalar, source: &SparseVec<K>) {
    use std::collections::btree_map::Entry;
    for (k, x) in source {
        let delta = factor * x;
        match target.entry(k.clone()) {
            Entry::Vacant(v) => {
                if !delta.is_zero() {
                    v.insert(delta);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Pivot keys, largest first.
    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys().rev()
    }

    pub fn has_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Basis rows, largest pivot first.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values().rev()
    }

    /// The part of `v` left after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        let hits: Vec<(K, CycloScalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        for (k, c) in hits {
            axpy(&mut out, &-c, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((lead, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading coefficient");
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&lead).cloned() {
                axpy(row, &-f, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    /// Coordinates of `v` in the echelon basis (keyed by pivot), or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<BTreeMap<K, CycloScalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        )
    }

    /// Basis of `{w : Σ_k row_k · w_k = 0 for every row}` inside the coordinate set `universe`.
    pub fn null_space(&self, universe: &[K]) -> Vec<SparseVec<K>> {
        universe
            .iter()
            .filter(|k| !self.rows.contains_key(k))
            .map(|free| {
                let mut w = SparseVec::new();
                w.insert(free.clone(), CycloScalar::one());
                for (p, row) in &self.rows {
                    if let Some(c) = row.get(free) {
                        w.insert(p.clone(), -c);
                    }
                }
                w
            })
            .collect()
    }
}

impl Echelon<Monomial> {
    pub fn from_polys<'a>(polys: impl IntoIterator<Item = &'a MPoly>) -> Self {
        let mut e = Self::new();
        for p in polys {
            e.insert_poly(p);
        }
        e
    }

    pub fn insert_poly(&mut self, p: &MPoly) -> bool {
        self.insert(p.map())
    }

    pub fn contains_poly(&self, p: &MPoly) -> bool {
        self.contains(p.map())
    }

    pub fn reduce_poly(&self, p: &MPoly) -> MPoly {
        MPoly::from_map(p.space(), p.nvars(), self.reduce(p.map()))
    }

    /// The basis as polynomials, largest leading monomial first.
    pub fn polys(&self, space: Space, nvars: usize) -> Vec<MPoly> {
        self.rows()
            .map(|r| MPoly::from_map(space, nvars, r.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries
            .iter()
            .map(|&(k, c)| (k, CycloScalar::from_int(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)]).iter().map(|(k, c)| (*k, -c)).collect()));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&[(0, 1)])));
    }

    #[test]
    fn basis_is_fully_reduced() {
        let mut e = Echelon::new();
        e.insert(&v(&[(2, 1), (1, 1)]));
        e.insert(&v(&[(1, 1), (0, 1)]));
        for row in e.rows() {
            let pivot = row.keys().next_back().unwrap();
            assert!(row[pivot].is_one());
            for other in e.pivots().filter(|p| *p != pivot) {
                assert!(!row.contains_key(other));
            }
        }
    }

    #[test]
    fn coordinates_reconstruct() {
        let mut e = Echelon::new();
        let a = v(&[(3, 1), (1, 2)]);
        let b = v(&[(2, 1), (0, -1)]);
        e.insert(&a);
        e.insert(&b);
        let target = v(&[(3, 2), (2, -3), (1, 4), (0, 3)]);
        let coords = e.coordinates(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        for (p, c) in &coords {
            let row = e.rows().find(|r| r.keys().next_back() == Some(p)).unwrap();
            axpy(&mut rebuilt, c, row);
        }
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn null_space_is_orthogonal() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (1, 2), (2, 3)]));
        let ker = e.null_space(&[0, 1, 2]);
        assert_eq!(ker.len(), 2);
        for w in &ker {
            for row in e.rows() {
                let dot = row.iter().fold(CycloScalar::zero(), |acc, (k, c)| {
                    acc + c * &w.get(k).cloned().unwrap_or_else(CycloScalar::zero)
                });
                assert!(dot.is_zero());
            }
        }
    }
}
