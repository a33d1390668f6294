//! Conjugacy classes, exact character tables, and fake degrees.

mod classes;
mod dixon;

pub use classes::{conjugacy_classes, element_order, exponent, ClassData, ConjugacyClass};

use serde::{Deserialize, Serialize};

use crate::arith::{int, CycloScalar, RatPoly, RatSeries, Rational};
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::invariants::{fixed_point_basis, molien, GradedBasis, GroupAction, Harmonics};
use crate::poly::SquareMatrix;

pub const DEFAULT_TABLE_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub representative: SquareMatrix,
    pub size: usize,
}

/// Irreducible characters as rows over the classes of [`ClassData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ClassSummary>,
    pub degrees: Vec<u64>,
    pub characters: Vec<Vec<CycloScalar>>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c.size)
    }

    /// `(a, b)_G = (1/|G|) Σ_k |K_k| a_k \bar{b_k}`.
    pub fn inner_product(&self, a: &[CycloScalar], b: &[CycloScalar]) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for ((x, y), size) in a.iter().zip(b).zip(self.sizes()) {
            acc += &(&(x * &y.conj()) * &CycloScalar::from_int(size as i64));
        }
        acc.scale(&Rational::new(1.into(), (self.group_order as i64).into()))
    }

    /// Multiplicity of each irreducible in a class function, which must be a character.
    pub fn decompose(&self, chi: &[CycloScalar]) -> Result<Vec<i64>> {
        self.characters
            .iter()
            .map(|row| {
                let m = self.inner_product(chi, row);
                m.as_rational()
                    .filter(|q| q.is_integer())
                    .and_then(|q| i64::try_from(q.to_integer()).ok())
                    .ok_or_else(|| Error::verification(format!("non-integral multiplicity {m}")))
            })
            .collect()
    }

    /// Both orthogonality relations, exactly.
    pub fn check_orthogonality(&self) -> bool {
        let r = self.len();
        let order = CycloScalar::from_int(self.group_order as i64);
        for a in 0..r {
            for b in a..r {
                let ip = self.inner_product(&self.characters[a], &self.characters[b]);
                if ip != CycloScalar::from_int(i64::from(a == b)) {
                    return false;
                }
            }
        }
        let sizes: Vec<usize> = self.sizes().collect();
        for k in 0..r {
            for l in k..r {
                let mut acc = CycloScalar::zero();
                for row in &self.characters {
                    acc += &(&row[k] * &row[l].conj());
                }
                let expected = if k == l {
                    order.scale(&Rational::new(1.into(), (sizes[k] as i64).into()))
                } else {
                    CycloScalar::zero()
                };
                if acc != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact character table for `|G| ≤ cap`.
pub fn character_table_with_cap(g: &ReflectionGroup, classes: &ClassData, cap: usize) -> Result<CharacterTable> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "character table (table too large)".into(),
            cap,
        });
    }
    let mut rows = dixon::dixon_schneider(g, classes)?;
    let key = |row: &Vec<CycloScalar>| -> (bool, Vec<Vec<Rational>>) {
        let trivial = row.iter().all(CycloScalar::is_one);
        (!trivial, row.iter().map(|x| x.key_at(lcm_order(row))).collect())
    };
    rows.sort_by_cached_key(|row| {
        let (nontrivial, values) = key(row);
        (nontrivial, row[0].as_rational().cloned().unwrap_or_else(|| int(0)), values)
    });
    let degrees = rows
        .iter()
        .map(|row| {
            row[0]
                .as_rational()
                .and_then(|q| u64::try_from(q.to_integer()).ok())
                .expect("degrees are positive integers")
        })
        .collect();
    let table = CharacterTable {
        group_order: g.order(),
        classes: classes
            .classes
            .iter()
            .map(|c| ClassSummary {
                representative: g.element(c.representative).clone(),
                size: c.size,
            })
            .collect(),
        degrees,
        characters: rows,
    };
    if !table.check_orthogonality() {
        return Err(Error::verification("character table fails orthogonality"));
    }
    Ok(table)
}

fn lcm_order(row: &[CycloScalar]) -> u32 {
    use num_integer::Integer;
    row.iter().fold(1u32, |acc, x| acc.lcm(&x.order()))
}

pub fn character_table(g: &ReflectionGroup) -> Result<CharacterTable> {
    character_table_with_cap(g, &conjugacy_classes(g), DEFAULT_TABLE_CAP)
}

/// Trace of each class representative on the degree-`d` part of a `G`-stable graded space.
///
/// The basis is in reduced echelon form, so the coordinate of `g·b_i` along `b_i`
/// is its coefficient at the pivot of `b_i`.
pub fn graded_character(g: &ReflectionGroup, classes: &ClassData, space: &GradedBasis, d: u32) -> Vec<CycloScalar> {
    let basis = space.degree(d);
    let Some(first) = basis.first() else {
        return vec![CycloScalar::zero(); classes.len()];
    };
    let action = GroupAction::new(g, first.space());
    classes
        .classes
        .iter()
        .map(|c| space.trace(d, action.substitution(c.representative)))
        .collect()
}

/// `f_M(t) = Σ_i (H_i, M)_G t^i` for every irreducible `M`, in table order.
pub fn fake_degrees(g: &ReflectionGroup, classes: &ClassData, table: &CharacterTable, harm: &Harmonics) -> Result<Vec<RatPoly>> {
    let n = harm.top_degree();
    let mut coeffs = vec![Vec::new(); table.len()];
    for d in 0..=n {
        let chi = graded_character(g, classes, harm.basis(), d);
        for (i, m) in table.decompose(&chi)?.into_iter().enumerate() {
            coeffs[i].push(m);
        }
    }
    Ok(coeffs.iter().map(|c| RatPoly::from_ints(c)).collect())
}

/// `m(M) = (1/|G'|) Σ_{h ∈ G'} χ_M(h)`, the multiplicity of `M` in `Ind_{G'}^G(1)`.
pub fn induced_trivial_multiplicities(
    g: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    sub: &ReflectionGroup,
) -> Result<Vec<i64>> {
    let emb = g
        .embedding_of(sub)
        .ok_or_else(|| Error::usage(format!("{} is not a subgroup of {}", sub.name(), g.name())))?;
    let mut counts = vec![0i64; classes.len()];
    for &i in &emb {
        counts[classes.class_of[i]] += 1;
    }
    table
        .characters
        .iter()
        .map(|row| {
            let mut acc = CycloScalar::zero();
            for (x, &c) in row.iter().zip(&counts) {
                if c > 0 {
                    acc += &x.scale(&int(c));
                }
            }
            let m = acc.scale(&Rational::new(1.into(), (sub.order() as i64).into()));
            m.as_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| i64::try_from(q.to_integer()).ok())
                .ok_or_else(|| Error::verification(format!("non-integral multiplicity {m}")))
        })
        .collect()
}

/// The three computations of `Poin(H(G)^{G'})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FakeDegreeReport {
    pub multiplicities: Vec<i64>,
    pub fake_degrees: Vec<RatPoly>,
    /// `Σ_M m(M) f_M(t)`.
    pub character_sum: RatPoly,
    /// Dimensions of the fixed space, degree by degree.
    pub fixed_space: RatPoly,
    /// `Molien(G') / Molien(G)` through degree `N`.
    pub molien_quotient: RatPoly,
    pub agree: bool,
}

/// `Molien(K) / Molien(G)` through `t^N`.
pub fn molien_quotient(g: &ReflectionGroup, k: &ReflectionGroup, n: usize) -> Result<RatPoly> {
    let q: RatSeries = molien(k, n).divide(&molien(g, n))?;
    Ok(q.to_poly())
}

/// Compares the character route, the fixed-space route and the Molien route for `K ⊆ G`.
///
/// `K` need not be a reflection subgroup.
pub fn verify_fake_degree_formula(g: &ReflectionGroup, k: &ReflectionGroup) -> Result<FakeDegreeReport> {
    let harm = Harmonics::new(g)?;
    let classes = conjugacy_classes(g);
    let table = character_table_with_cap(g, &classes, DEFAULT_TABLE_CAP)?;
    let fake = fake_degrees(g, &classes, &table, &harm)?;
    let mult = induced_trivial_multiplicities(g, &classes, &table, k)?;
    let character_sum = fake
        .iter()
        .zip(&mult)
        .fold(RatPoly::zero(), |acc, (f, &m)| &acc + &f.scale(&int(m)));
    let fixed_space = fixed_point_basis(harm.basis(), k)?.poincare();
    let molien_quotient = molien_quotient(g, k, harm.top_degree() as usize)?;
    Ok(FakeDegreeReport {
        agree: character_sum == fixed_space && fixed_space == molien_quotient,
        multiplicities: mult,
        fake_degrees: fake,
        character_sum,
        fixed_space,
        molien_quotient,
    })
}
