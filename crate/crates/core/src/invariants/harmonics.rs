use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::averaging::GroupAction;
use super::graded::GradedBasis;
use super::molien::{invariant_degrees, molien, poincare_from_degrees};
use crate::arith::{CycloScalar, RatPoly};
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{diff_apply, matrix, monomials_of_degree, MPoly, Monomial, Space};

/// How to compute the harmonic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HarmonicMethod {
    /// Orthogonal complement of the covariant ideal under the apolar pairing.
    Perp,
    /// Span of all partial derivatives of `Π`.
    Derivative,
}

fn num_monomials(nvars: usize, d: u32) -> usize {
    // C(d + n - 1, n - 1)
    let (n, d) = (nvars as u128, d as u128);
    if n == 0 {
        return usize::from(d == 0);
    }
    ((1..n).fold(1u128, |acc, k| acc * (d + k) / k)) as usize
}

fn shift(row: &SparseVec<Monomial>, i: usize) -> SparseVec<Monomial> {
    row.iter()
        .map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[i] += 1;
            (Monomial::new(e), c.clone())
        })
        .collect()
}

/// Echelon forms of the graded pieces `F_0, …, F_max` of the ideal generated
/// by positive-degree invariants, on the algebra of `action`.
///
/// `F_d` is spanned by `v·F_{d-1}` for the variables `v` together with the
/// degree-`d` invariants. When `targets[d]` is known and reached by the
/// products alone the invariants are not needed.
pub(crate) fn ideal_echelons(
    action: &GroupAction,
    nvars: usize,
    max_d: u32,
    molien_coeffs: &[usize],
    targets: Option<&[usize]>,
) -> Vec<Echelon<Monomial>> {
    let mut fs: Vec<Echelon<Monomial>> = vec![Echelon::new()];
    for d in 1..=max_d {
        let target = targets.map(|t| t[d as usize]);
        let mut e = Echelon::new();
        'outer: for row in fs[d as usize - 1].rows() {
            for i in 0..nvars {
                if Some(e.rank()) == target {
                    break 'outer;
                }
                e.insert(&shift(row, i));
            }
        }
        if Some(e.rank()) != target {
            let inv = action.invariants(nvars, d, molien_coeffs[d as usize]);
            for row in inv.rows() {
                e.insert(row);
            }
        }
        fs.push(e);
    }
    fs
}

struct Setup {
    degrees: Vec<u32>,
    n: u32,
    poincare: RatPoly,
    molien_coeffs: Vec<usize>,
    targets: Vec<usize>,
}

fn setup(g: &ReflectionGroup) -> Result<Setup> {
    let degrees = invariant_degrees(g)?;
    let n = g.num_reflections() as u32;
    let poincare = poincare_from_degrees(&degrees);
    let series = molien(g, n as usize);
    let molien_coeffs = series
        .coeffs()
        .iter()
        .map(|c| c.to_integer().to_usize().expect("dimension"))
        .collect();
    let targets = (0..=n)
        .map(|d| {
            let h = poincare.coeff(d as usize).to_integer().to_usize().expect("dimension");
            num_monomials(g.dim(), d) - h
        })
        .collect();
    Ok(Setup {
        degrees,
        n,
        poincare,
        molien_coeffs,
        targets,
    })
}

/// Echelon basis of `F_d` on the given algebra.
pub fn ideal_component(g: &ReflectionGroup, space: Space, d: u32) -> Result<Vec<MPoly>> {
    let series = molien(g, d as usize);
    let coeffs: Vec<usize> = series
        .coeffs()
        .iter()
        .map(|c| c.to_integer().to_usize().expect("dimension"))
        .collect();
    let targets = setup(g).ok().map(|s| {
        (0..=d)
            .map(|k| {
                s.targets.get(k as usize).copied().unwrap_or_else(|| num_monomials(g.dim(), k))
            })
            .collect::<Vec<_>>()
    });
    let action = GroupAction::new(g, space);
    let fs = ideal_echelons(&action, g.dim(), d, &coeffs, targets.as_deref());
    Ok(fs[d as usize].polys(space, g.dim()))
}

fn derivative_basis(g: &ReflectionGroup, n: u32) -> BTreeMap<u32, Echelon<Monomial>> {
    let pi = g.skew_product();
    (0..=n)
        .map(|d| {
            let mut e = Echelon::new();
            for m in monomials_of_degree(g.dim(), n - d) {
                let op = MPoly::term(Space::Covariant, m, CycloScalar::one());
                e.insert_poly(&diff_apply(&op, pi).expect("tags are correct"));
            }
            (d, e)
        })
        .collect()
}

fn perp_basis(g: &ReflectionGroup, s: &Setup) -> BTreeMap<u32, Echelon<Monomial>> {
    let action = GroupAction::new(g, Space::Covariant);
    let bff = ideal_echelons(&action, g.dim(), s.n, &s.molien_coeffs, Some(&s.targets));
    (0..=s.n)
        .map(|d| (d, annihilator(&bff[d as usize], g.dim(), d)))
        .collect()
}

/// The harmonic space of `g` in `S(V*)`, degrees `0..=N`.
pub fn harmonic_basis(g: &ReflectionGroup, method: HarmonicMethod) -> Result<GradedBasis> {
    let s = setup(g)?;
    let e = match method {
        HarmonicMethod::Derivative => derivative_basis(g, s.n),
        HarmonicMethod::Perp => perp_basis(g, &s),
    };
    Ok(GradedBasis::from_echelons(Space::Contravariant, g.dim(), &e))
}

/// The decomposition `S(V*) = H ⊕ F` for one group, with everything cached.
#[derive(Clone, Debug)]
pub struct Harmonics {
    nvars: usize,
    degrees: Vec<u32>,
    n: u32,
    poincare: RatPoly,
    ideal: Vec<Echelon<Monomial>>,
    harmonic: BTreeMap<u32, Echelon<Monomial>>,
    basis: GradedBasis,
    covariant: GradedBasis,
}

/// Coefficient vectors of `F_d^⊥` under the apolar pairing: the vectors `q` with
/// `Σ_α f_α q_α α! = 0` for every `f ∈ F_d`.
fn annihilator(f: &Echelon<Monomial>, nvars: usize, d: u32) -> Echelon<Monomial> {
    let universe = monomials_of_degree(nvars, d);
    let mut e = Echelon::new();
    for w in f.null_space(&universe) {
        let p: SparseVec<Monomial> = w
            .into_iter()
            .map(|(m, c)| {
                let inv = m.weight_scalar().inv().expect("nonzero");
                (m, &c * &inv)
            })
            .collect();
        e.insert(&p);
    }
    e
}

impl Harmonics {
    pub fn new(g: &ReflectionGroup) -> Result<Self> {
        let s = setup(g)?;
        let action = GroupAction::new(g, Space::Contravariant);
        let ideal = ideal_echelons(&action, g.dim(), s.n, &s.molien_coeffs, Some(&s.targets));
        let harmonic = derivative_basis(g, s.n);
        let basis = GradedBasis::from_echelons(Space::Contravariant, g.dim(), &harmonic);
        let co: BTreeMap<u32, Echelon<Monomial>> = (0..=s.n)
            .map(|d| (d, annihilator(&ideal[d as usize], g.dim(), d)))
            .collect();
        let covariant = GradedBasis::from_echelons(Space::Covariant, g.dim(), &co);
        Ok(Harmonics {
            nvars: g.dim(),
            degrees: s.degrees,
            n: s.n,
            poincare: s.poincare,
            ideal,
            harmonic,
            basis,
            covariant,
        })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `N = deg Π`.
    pub fn top_degree(&self) -> u32 {
        self.n
    }

    /// `∏ (1 + … + t^{d_i - 1})`.
    pub fn poincare(&self) -> &RatPoly {
        &self.poincare
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    /// Harmonics of the action on `V*`, living in `S(V)`: the annihilator of `F`.
    pub fn covariant_basis(&self) -> &GradedBasis {
        &self.covariant
    }

    /// Echelon form of `F_d`; `None` above `N`, where `F_d` is everything.
    pub fn ideal(&self, d: u32) -> Option<&Echelon<Monomial>> {
        self.ideal.get(d as usize)
    }

    pub fn harmonic_echelon(&self, d: u32) -> Option<&Echelon<Monomial>> {
        self.harmonic.get(&d)
    }

    pub fn is_harmonic(&self, p: &MPoly) -> bool {
        p.space() == Space::Contravariant && p.nvars() == self.nvars && self.basis.contains(p)
    }

    /// Splits `P = h + f` with `h` harmonic and `f` in the ideal `F`.
    pub fn project(&self, p: &MPoly) -> Result<(MPoly, MPoly)> {
        if p.space() != Space::Contravariant || p.nvars() != self.nvars {
            return Err(Error::usage(format!(
                "projection expects a polynomial in S(V*) on {} variables",
                self.nvars
            )));
        }
        let mut h = MPoly::zero(Space::Contravariant, self.nvars);
        for d in 0..=p.max_degree().unwrap_or(0).min(self.n) {
            let c = p.component(d);
            if c.is_zero() {
                continue;
            }
            let f_d = &self.ideal[d as usize];
            let r = f_d.reduce_poly(&c);
            if r.is_zero() {
                continue;
            }
            let hs = self.basis.degree(d);
            let rs: Vec<MPoly> = hs.iter().map(|x| f_d.reduce_poly(x)).collect();
            let free: Vec<Monomial> = monomials_of_degree(self.nvars, d)
                .into_iter()
                .filter(|m| !f_d.has_pivot(m))
                .collect();
            let a: Vec<Vec<CycloScalar>> = free
                .iter()
                .map(|m| rs.iter().map(|x| x.coeff(m)).collect())
                .collect();
            let b: Vec<CycloScalar> = free.iter().map(|m| r.coeff(m)).collect();
            let coords = matrix::solve(&a, &b)
                .map_err(|_| Error::verification(format!("H and F are not complementary in degree {d}")))?;
            for (x, c) in hs.iter().zip(&coords) {
                h = &h + &x.scale(c);
            }
        }
        let f = p - &h;
        Ok((h, f))
    }
}

/// `P = h + f` with `h ∈ H(G)` and `f ∈ F`.
pub fn project_to_h(g: &ReflectionGroup, p: &MPoly) -> Result<(MPoly, MPoly)> {
    Harmonics::new(g)?.project(p)
}
