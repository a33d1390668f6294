//! The factorisation `H(G') ⊗ H(G)^{G'} ≅ H(G)` and its consequences.
//!
//! [`Factorisation`] holds the harmonic data of a group `G` and a reflection
//! subgroup `G'`. The map `ξ` multiplies and projects to `H(G)` along the
//! ideal `F`; [`Factorisation::verify`] checks it is a graded isomorphism.
//! The duality maps `d` and `e` realise the same spaces through derivatives of `Π`.

mod report;

pub use report::{
    BlockRank, DivisibilityCount, DivisibilityReport, DualScalar, EquivarianceCheck,
    FactorisationReport,
};

use crate::arith::{CycloScalar, RatPoly};
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::invariants::{fixed_point_basis, poincare_from_degrees, GradedBasis, Harmonics};
use crate::linalg::Echelon;
use crate::poly::{act, diff_apply, MPoly, SquareMatrix};

/// Harmonic data of a pair `G' ⊆ G`.
#[derive(Clone, Debug)]
pub struct Factorisation<'a> {
    group: &'a ReflectionGroup,
    subgroup: &'a ReflectionGroup,
    big: Harmonics,
    small: Harmonics,
    fixed: GradedBasis,
    covariant_fixed: GradedBasis,
}

impl<'a> Factorisation<'a> {
    pub fn new(group: &'a ReflectionGroup, subgroup: &'a ReflectionGroup) -> Result<Self> {
        if subgroup.dim() != group.dim() || group.embedding_of(subgroup).is_none() {
            return Err(Error::usage(format!(
                "{} is not a subgroup of {}",
                subgroup.name(),
                group.name()
            )));
        }
        let big = Harmonics::new(group)?;
        let small = Harmonics::new(subgroup).map_err(|e| {
            Error::usage(format!("{} is not a reflection subgroup: {e}", subgroup.name()))
        })?;
        let fixed = fixed_point_basis(big.basis(), subgroup)?;
        let covariant_fixed = fixed_point_basis(big.covariant_basis(), subgroup)?;
        Ok(Factorisation {
            group,
            subgroup,
            big,
            small,
            fixed,
            covariant_fixed,
        })
    }

    pub fn group(&self) -> &ReflectionGroup {
        self.group
    }

    pub fn subgroup(&self) -> &ReflectionGroup {
        self.subgroup
    }

    /// Harmonic data of `G`.
    pub fn harmonics(&self) -> &Harmonics {
        &self.big
    }

    /// Harmonic data of `G'`.
    pub fn sub_harmonics(&self) -> &Harmonics {
        &self.small
    }

    /// `H(G)^{G'}`.
    pub fn fixed(&self) -> &GradedBasis {
        &self.fixed
    }

    /// `bhh(G)^{G'}`: the `G'`-fixed covariant harmonics of `G`.
    pub fn covariant_fixed(&self) -> &GradedBasis {
        &self.covariant_fixed
    }

    /// `ξ(h' ⊗ k)`, the `H(G)` component of `h'·k`.
    pub fn xi(&self, hprime: &MPoly, k: &MPoly) -> Result<MPoly> {
        if !self.small.is_harmonic(hprime) {
            return Err(Error::usage(format!("{hprime} is not harmonic for {}", self.subgroup.name())));
        }
        if !self.fixed.contains(k) {
            return Err(Error::usage(format!(
                "{k} is not a {}-fixed harmonic of {}",
                self.subgroup.name(),
                self.group.name()
            )));
        }
        self.xi_unchecked(hprime, k)
    }

    fn xi_unchecked(&self, hprime: &MPoly, k: &MPoly) -> Result<MPoly> {
        Ok(self.big.project(&hprime.try_mul(k)?)?.0)
    }

    /// `(∏ [d_i]_t, ∏ [d'_i]_t · Poin(H^{G'}))`.
    pub fn poincare(&self) -> (RatPoly, RatPoly) {
        let lhs = poincare_from_degrees(self.big.degrees());
        let rhs = &poincare_from_degrees(self.small.degrees()) * &self.fixed.poincare();
        (lhs, rhs)
    }

    /// Degreewise ranks of `ξ` on the tensor basis.
    pub fn blocks(&self) -> Result<Vec<BlockRank>> {
        let n = self.big.top_degree();
        let mut out = Vec::new();
        for d in 0..=n {
            let mut images = Echelon::new();
            let mut pairs = 0;
            for (i, hs) in self.small.basis().iter() {
                if i > d {
                    continue;
                }
                for h in hs {
                    for k in self.fixed.degree(d - i) {
                        images.insert_poly(&self.xi_unchecked(h, k)?);
                        pairs += 1;
                    }
                }
            }
            out.push(BlockRank {
                degree: d,
                target_dim: self.big.basis().dim(d),
                source_dim: pairs,
                rank: images.rank(),
            });
        }
        Ok(out)
    }

    /// Checks `ξ(n·h' ⊗ n·k) = n·ξ(h' ⊗ k)` on every basis pair.
    pub fn equivariance(&self, n: &SquareMatrix) -> Result<bool> {
        if !self.group.is_normalized_by(n)? || !self.subgroup.is_normalized_by(n)? {
            return Err(Error::usage(format!("{n} does not normalise both groups")));
        }
        for h in self.small.basis().all() {
            let nh = act(n, h)?;
            for k in self.fixed.all() {
                let nk = act(n, k)?;
                if self.xi(&nh, &nk)? != act(n, &self.xi_unchecked(h, k)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `d(h) = D_h(Π)` for a covariant harmonic `h` of `G`.
    pub fn d_map(&self, h: &MPoly) -> Result<MPoly> {
        d_map_with(&self.big, self.group, h)
    }

    /// `e(a) = D_{ϖ' a}(Π)` for `a` in `bhh(G)^{G'}`.
    pub fn e_map(&self, a: &MPoly) -> Result<MPoly> {
        if !self.covariant_fixed.contains(a) {
            return Err(Error::usage(format!(
                "{a} is not a {}-fixed covariant harmonic of {}",
                self.subgroup.name(),
                self.group.name()
            )));
        }
        let op = self.subgroup.covariant_skew_product().try_mul(a)?;
        diff_apply(&op, self.group.skew_product())
    }

    /// Compares `ξ(D_h(Π') ⊗ e(a))` with `D_{ah}(Π)`.
    pub fn dual_compare(&self, h: &MPoly, a: &MPoly) -> Result<DualScalar> {
        if !self.small.covariant_basis().contains(h) {
            return Err(Error::usage(format!(
                "{h} is not a covariant harmonic of {}",
                self.subgroup.name()
            )));
        }
        let hh = diff_apply(h, self.subgroup.skew_product())?;
        let k = self.e_map(a)?;
        let lhs = self.xi(&hh, &k)?;
        let rhs = diff_apply(&a.try_mul(h)?, self.group.skew_product())?;
        let scalar = lhs.ratio_to(&rhs);
        Ok(DualScalar {
            h: h.clone(),
            a: a.clone(),
            collinear: scalar.is_some(),
            lhs,
            rhs,
            scalar,
        })
    }

    /// `dual_compare` on every pair of echelon basis elements.
    pub fn dual_scalars(&self) -> Result<Vec<DualScalar>> {
        let mut out = Vec::new();
        for h in self.small.covariant_basis().all() {
            for a in self.covariant_fixed.all() {
                out.push(self.dual_compare(h, a)?);
            }
        }
        Ok(out)
    }

    /// Divisibility of Poincaré polynomials and of degree counts.
    pub fn divisibility(&self) -> DivisibilityReport {
        divisibility(self.big.degrees(), self.small.degrees())
    }

    /// Coordinate permutations and scalar matrices that normalise both groups.
    pub fn default_normalizers(&self) -> Result<Vec<SquareMatrix>> {
        let l = self.group.dim();
        let mut candidates = Vec::new();
        for perm in permutations(l) {
            let rows: Vec<Vec<CycloScalar>> = perm
                .iter()
                .map(|&j| (0..l).map(|c| CycloScalar::from_int(i64::from(c == j))).collect())
                .collect();
            candidates.push(SquareMatrix::from_rows(rows)?);
        }
        candidates.push(SquareMatrix::scalar(l, CycloScalar::from_int(-1)));
        let m = self.group.field_order();
        if m > 2 {
            candidates.push(SquareMatrix::scalar(l, CycloScalar::zeta(m)));
        }
        candidates.push(SquareMatrix::scalar(l, CycloScalar::from_int(2)));
        let mut out = Vec::new();
        for n in candidates {
            if self.group.is_normalized_by(&n)? && self.subgroup.is_normalized_by(&n)? {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// Full verification with the default normalizer list.
    pub fn verify(&self) -> Result<FactorisationReport> {
        let normalizers = self.default_normalizers()?;
        self.verify_with(&normalizers)
    }

    pub fn verify_with(&self, normalizers: &[SquareMatrix]) -> Result<FactorisationReport> {
        let blocks = self.blocks()?;
        let (poincare_lhs, poincare_rhs) = self.poincare();
        let index = self.group.order() / self.subgroup.order();
        let fixed_dim = self.fixed.total_dim();
        let bijective = blocks
            .iter()
            .all(|b| b.rank == b.target_dim && b.source_dim == b.target_dim)
            && self.small.basis().total_dim() * fixed_dim == self.big.basis().total_dim();
        let mut equivariance_checks = Vec::new();
        for n in normalizers {
            equivariance_checks.push(EquivarianceCheck {
                element: n.clone(),
                passed: self.equivariance(n)?,
            });
        }
        Ok(FactorisationReport {
            group: self.group.name().to_string(),
            subgroup: self.subgroup.name().to_string(),
            group_order: self.group.order(),
            subgroup_order: self.subgroup.order(),
            degrees: self.big.degrees().to_vec(),
            subgroup_degrees: self.small.degrees().to_vec(),
            blocks,
            fixed_dim,
            index,
            poincare_equal: poincare_lhs == poincare_rhs,
            poincare_lhs,
            poincare_rhs,
            fixed_poincare: self.fixed.poincare(),
            bijective,
            equivariance_checks,
            dual_scalars: self.dual_scalars()?,
            divisibility: self.divisibility(),
        })
    }
}

fn d_map_with(harm: &Harmonics, g: &ReflectionGroup, h: &MPoly) -> Result<MPoly> {
    if !harm.covariant_basis().contains(h) {
        return Err(Error::usage(format!("{h} is not a covariant harmonic of {}", g.name())));
    }
    diff_apply(h, g.skew_product())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Divisibility of `∏[d'_i]_t` into `∏[d_i]_t`, and `#{i : n | d'_i} ≤ #{i : n | d_i}` for every `n`.
pub fn divisibility(degrees: &[u32], sub_degrees: &[u32]) -> DivisibilityReport {
    let lhs = poincare_from_degrees(degrees);
    let rhs = poincare_from_degrees(sub_degrees);
    let quotient = lhs.exact_div(&rhs).ok().flatten();
    let top = degrees.iter().chain(sub_degrees).copied().max().unwrap_or(1);
    let counts: Vec<DivisibilityCount> = (1..=top)
        .map(|n| {
            let count = degrees.iter().filter(|&&d| d % n == 0).count();
            let sub_count = sub_degrees.iter().filter(|&&d| d % n == 0).count();
            DivisibilityCount {
                n,
                sub_count,
                count,
                ok: sub_count <= count,
            }
        })
        .collect();
    DivisibilityReport {
        divides: quotient.is_some(),
        quotient,
        counts_ok: counts.iter().all(|c| c.ok),
        counts,
    }
}

/// `ξ(h' ⊗ k)` for `G' ⊆ G`.
pub fn xi_apply(g: &ReflectionGroup, sub: &ReflectionGroup, hprime: &MPoly, k: &MPoly) -> Result<MPoly> {
    Factorisation::new(g, sub)?.xi(hprime, k)
}

pub fn verify_factorisation(g: &ReflectionGroup, sub: &ReflectionGroup) -> Result<FactorisationReport> {
    Factorisation::new(g, sub)?.verify()
}

pub fn poincare_factorisation(g: &ReflectionGroup, sub: &ReflectionGroup) -> Result<(RatPoly, RatPoly)> {
    Ok(Factorisation::new(g, sub)?.poincare())
}

pub fn degree_divisibility(g: &ReflectionGroup, sub: &ReflectionGroup) -> Result<DivisibilityReport> {
    let degrees = crate::invariants::invariant_degrees(g)?;
    let sub_degrees = crate::invariants::invariant_degrees(sub)?;
    Ok(divisibility(&degrees, &sub_degrees))
}

/// `d(h) = D_h(Π)`.
pub fn d_map(g: &ReflectionGroup, h: &MPoly) -> Result<MPoly> {
    d_map_with(&Harmonics::new(g)?, g, h)
}

pub fn e_map(g: &ReflectionGroup, sub: &ReflectionGroup, a: &MPoly) -> Result<MPoly> {
    Factorisation::new(g, sub)?.e_map(a)
}

pub fn xi_dual_compare(g: &ReflectionGroup, sub: &ReflectionGroup, h: &MPoly, a: &MPoly) -> Result<DualScalar> {
    Factorisation::new(g, sub)?.dual_compare(h, a)
}

pub fn equivariance_check(g: &ReflectionGroup, sub: &ReflectionGroup, n: &SquareMatrix) -> Result<bool> {
    Factorisation::new(g, sub)?.equivariance(n)
}
