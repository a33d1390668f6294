use serde::{Deserialize, Serialize};

use crate::arith::{CycloScalar, RatPoly};
use crate::poly::{MPoly, SquareMatrix};

/// Rank of `ξ` restricted to one total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRank {
    pub degree: u32,
    /// `dim H(G)_d`.
    pub target_dim: usize,
    /// Number of tensor basis pairs of total degree `d`.
    pub source_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceCheck {
    pub element: SquareMatrix,
    pub passed: bool,
}

/// `ξ(D_h(Π') ⊗ e(a))` against `D_{ah}(Π)`; `scalar` is `lhs / rhs` when they are collinear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualScalar {
    pub h: MPoly,
    pub a: MPoly,
    pub lhs: MPoly,
    pub rhs: MPoly,
    pub collinear: bool,
    pub scalar: Option<CycloScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityCount {
    pub n: u32,
    pub sub_count: usize,
    pub count: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub divides: bool,
    pub quotient: Option<RatPoly>,
    pub counts_ok: bool,
    pub counts: Vec<DivisibilityCount>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.divides && self.counts_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorisationReport {
    pub group: String,
    pub subgroup: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub degrees: Vec<u32>,
    pub subgroup_degrees: Vec<u32>,
    pub blocks: Vec<BlockRank>,
    /// `dim H(G)^{G'}`.
    pub fixed_dim: usize,
    /// `|G| / |G'|`.
    pub index: usize,
    pub poincare_lhs: RatPoly,
    pub poincare_rhs: RatPoly,
    pub poincare_equal: bool,
    pub fixed_poincare: RatPoly,
    pub bijective: bool,
    pub equivariance_checks: Vec<EquivarianceCheck>,
    pub dual_scalars: Vec<DualScalar>,
    pub divisibility: DivisibilityReport,
}

impl FactorisationReport {
    /// Bijectivity, the dimension identity, the Poincaré identity, divisibility and every equivariance check.
    ///
    /// The duality scalars are informational and do not enter.
    pub fn passed(&self) -> bool {
        self.bijective
            && self.fixed_dim == self.index
            && self.poincare_equal
            && self.divisibility.passed()
            && self.equivariance_checks.iter().all(|c| c.passed)
    }
}
