use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::closure::{ReflectionGroup, DEFAULT_GROUP_CAP};
use crate::arith::CycloScalar;
use crate::error::{Error, Result};
use crate::poly::SquareMatrix;
use crate::weyl::{CartanType, RootSystem};

/// A named group model: `cyclic:e`, `gmpn:m:p:n` or `weyl:T:r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogSpec {
    Cyclic(u32),
    Gmpn { m: u32, p: u32, n: usize },
    Weyl(CartanType),
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::Cyclic(e) => write!(f, "cyclic:{e}"),
            CatalogSpec::Gmpn { m, p, n } => write!(f, "gmpn:{m}:{p}:{n}"),
            CatalogSpec::Weyl(t) => write!(f, "weyl:{:?}:{}", t.family, t.rank),
        }
    }
}

impl FromStr for CatalogSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| -> Result<u32> {
            x.parse()
                .map_err(|_| Error::usage(format!("expected a positive integer, got {x:?} in {s:?}")))
        };
        let spec = match parts.as_slice() {
            ["cyclic", e] => CatalogSpec::Cyclic(num(e)?),
            ["gmpn", m, p, n] => CatalogSpec::Gmpn {
                m: num(m)?,
                p: num(p)?,
                n: num(n)? as usize,
            },
            ["weyl", t, r] => CatalogSpec::Weyl(format!("{t}{r}").parse()?),
            ["weyl", t] => CatalogSpec::Weyl(t.parse()?),
            _ => {
                return Err(Error::usage(format!(
                    "unknown catalog name {s:?}; expected cyclic:e, gmpn:m:p:n or weyl:T:r"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl CatalogSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            CatalogSpec::Cyclic(0) => Err(Error::usage("cyclic order must be positive")),
            CatalogSpec::Gmpn { m, p, n } if m == 0 || p == 0 || n == 0 || m % p != 0 => Err(
                Error::usage(format!("gmpn:{m}:{p}:{n} needs m, p, n >= 1 and p | m")),
            ),
            CatalogSpec::Gmpn { n, .. } if n > 4 => Err(Error::usage("gmpn rank is limited to 4")),
            _ => Ok(()),
        }
    }

    /// `|G|` computed from the parameters alone.
    pub fn expected_order(&self) -> usize {
        match *self {
            CatalogSpec::Cyclic(e) => e as usize,
            CatalogSpec::Gmpn { m, p, n } => {
                (m as usize).pow(n as u32) * (1..=n).product::<usize>() / p as usize
            }
            CatalogSpec::Weyl(t) => weyl_order(t),
        }
    }

    pub fn generators(&self) -> Result<(usize, Vec<SquareMatrix>)> {
        self.validate()?;
        Ok(match *self {
            CatalogSpec::Cyclic(e) => (
                1,
                if e == 1 {
                    vec![]
                } else {
                    vec![SquareMatrix::scalar(1, CycloScalar::zeta(e))]
                },
            ),
            CatalogSpec::Gmpn { m, p, n } => (n, gmpn_generators(m, p, n)),
            CatalogSpec::Weyl(t) => (t.rank, RootSystem::new(t).simple_reflections()),
        })
    }
}

fn weyl_order(t: CartanType) -> usize {
    use crate::weyl::Family::*;
    let n = t.rank;
    let fact: usize = (1..=n).product();
    match t.family {
        A => fact * (n + 1),
        B | C => fact << n,
        D => (fact << n) / 2,
        G => 12,
    }
}

/// Generators of `G(m, p, n)`: the coordinate transpositions, then
/// `[[0, ζ⁻¹], [ζ, 0]]` in the first two coordinates when `p > 1`, then
/// `diag(ζ^p, 1, …, 1)` when `p < m`, with `ζ = ζ_m`.
pub fn gmpn_generators(m: u32, p: u32, n: usize) -> Vec<SquareMatrix> {
    let mut gens = Vec::new();
    let swap = |i: usize, j: usize, a: CycloScalar, b: CycloScalar| {
        let mut rows: Vec<Vec<CycloScalar>> = (0..n)
            .map(|r| (0..n).map(|c| CycloScalar::from_int(i64::from(r == c))).collect())
            .collect();
        rows[i][i] = CycloScalar::zero();
        rows[j][j] = CycloScalar::zero();
        rows[i][j] = a;
        rows[j][i] = b;
        SquareMatrix::from_rows(rows).expect("square")
    };
    for i in 0..n.saturating_sub(1) {
        gens.push(swap(i, i + 1, CycloScalar::one(), CycloScalar::one()));
    }
    if p > 1 && n >= 2 {
        gens.push(swap(0, 1, CycloScalar::zeta_pow(m, -1), CycloScalar::zeta(m)));
    }
    if p < m {
        let mut diag = vec![CycloScalar::one(); n];
        diag[0] = CycloScalar::zeta_pow(m, i64::from(p));
        gens.push(SquareMatrix::diagonal(diag));
    }
    gens
}

/// The fixed list of catalog groups used for whole-catalog checks.
///
/// `cyclic:1` to `cyclic:12`, every Weyl type of rank at most 4, and every
/// `G(m, p, n)` with `2 ≤ m ≤ 12`, `2 ≤ n ≤ 4` and order at most 1152.
pub fn standard_fixtures() -> Vec<CatalogSpec> {
    use crate::weyl::Family::*;
    let mut out: Vec<CatalogSpec> = (1..=12).map(CatalogSpec::Cyclic).collect();
    for (family, ranks) in [(A, 1..=4), (B, 2..=4), (C, 2..=4), (D, 2..=4), (G, 2..=2)] {
        for rank in ranks {
            out.push(CatalogSpec::Weyl(CartanType::new(family, rank).expect("supported rank")));
        }
    }
    for n in 2..=4 {
        for m in 2..=12 {
            for p in (1..=m).filter(|p| m % p == 0) {
                let spec = CatalogSpec::Gmpn { m, p, n };
                if spec.expected_order() <= 1152 {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Builds a catalog group with the default closure cap.
pub fn catalog(spec: &CatalogSpec) -> Result<ReflectionGroup> {
    catalog_with_cap(spec, DEFAULT_GROUP_CAP)
}

pub fn catalog_with_cap(spec: &CatalogSpec, cap: usize) -> Result<ReflectionGroup> {
    let (dim, gens) = spec.generators()?;
    ReflectionGroup::generate(spec.to_string(), dim, gens, cap)
}

/// A group as given in a JSON file: a catalog name or explicit generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Catalog { catalog: String },
    Generators { generators: Vec<SquareMatrix> },
}

impl GroupFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::usage(format!("bad group file: {e}")))
    }

    pub fn build(&self, name: &str, cap: usize) -> Result<ReflectionGroup> {
        match self {
            GroupFile::Catalog { catalog } => catalog_with_cap(&catalog.parse()?, cap),
            GroupFile::Generators { generators } => {
                let dim = generators
                    .first()
                    .ok_or_else(|| Error::usage("a group file needs at least one generator"))?
                    .dim();
                ReflectionGroup::generate(name, dim, generators.clone(), cap)
            }
        }
    }
}
