use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::arith::{int, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::poly::{matrix, SquareMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

/// A Cartan type such as `C3` or `G2`; ranks are limited to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => (1..=4).contains(&rank),
            Family::D => (2..=4).contains(&rank),
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::usage(format!("unsupported root system {family:?}{rank}")));
        }
        Ok(CartanType { family, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Accepts `C3`, `C:3` and `G2`.
impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(Error::usage(format!("unknown root system type in {s:?}"))),
        };
        let rest = chars.as_str().trim_start_matches(':');
        let rank = rest
            .parse()
            .map_err(|_| Error::usage(format!("bad rank in root system {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// A crystallographic root system with exact rational coordinates.
///
/// Types B, C and D use the standard orthonormal coordinates; A and G2 use
/// simple-root coordinates with the symmetrised Cartan matrix as Gram matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanType,
    gram: Vec<Vec<Rational>>,
    simples: Vec<Vec<Rational>>,
    positives: Vec<Vec<Rational>>,
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| int(i64::from(i == j))).collect()
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

fn neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| -x).collect()
}

impl RootSystem {
    pub fn new(cartan: CartanType) -> Self {
        let n = cartan.rank;
        let identity: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        let chain = |i: usize| combo(n, &[(i, 1), (i + 1, -1)]);
        let (gram, simples) = match cartan.family {
            Family::A => {
                let gram = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match i.abs_diff(j) {
                                0 => int(2),
                                1 => int(-1),
                                _ => int(0),
                            })
                            .collect()
                    })
                    .collect();
                (gram, identity.clone())
            }
            Family::B | Family::C | Family::D => {
                let mut simples: Vec<Vec<Rational>> = (0..n - 1).map(chain).collect();
                simples.push(match cartan.family {
                    Family::B => combo(n, &[(n - 1, 1)]),
                    Family::C => combo(n, &[(n - 1, 2)]),
                    _ => combo(n, &[(n - 2, 1), (n - 1, 1)]),
                });
                (identity.clone(), simples)
            }
            Family::G => (
                vec![vec![int(2), int(-3)], vec![int(-3), int(6)]],
                identity.clone(),
            ),
        };
        let mut rs = RootSystem {
            cartan,
            gram,
            simples,
            positives: Vec::new(),
        };
        rs.positives = rs.enumerate_positive();
        rs
    }

    fn enumerate_positive(&self) -> Vec<Vec<Rational>> {
        let mut seen: BTreeSet<Vec<Rational>> = self.simples.iter().cloned().collect();
        let mut queue: VecDeque<Vec<Rational>> = self.simples.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for s in &self.simples {
                let image = self.reflect(s, &r);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut pos: Vec<(Rational, Vec<Rational>, Vec<Rational>)> = seen
            .into_iter()
            .filter_map(|r| {
                let c = self.simple_coordinates(&r);
                c.iter().all(|x| !x.is_negative()).then(|| {
                    let height = c.iter().sum();
                    (height, c, r)
                })
            })
            .collect();
        pos.sort();
        pos.into_iter().map(|(_, _, r)| r).collect()
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn simples(&self) -> &[Vec<Rational>] {
        &self.simples
    }

    /// Positive roots ordered by height, then by simple-root coordinates.
    pub fn positives(&self) -> &[Vec<Rational>] {
        &self.positives
    }

    /// All roots: the positive ones followed by their negatives in the same order.
    pub fn roots(&self) -> Vec<Vec<Rational>> {
        let mut all = self.positives.clone();
        all.extend(self.positives.iter().map(|r| neg(r)));
        all
    }

    pub fn num_positive(&self) -> usize {
        self.positives.len()
    }

    pub fn is_root(&self, v: &[Rational]) -> bool {
        self.positives.iter().any(|r| r == v || neg(r) == v)
    }

    pub fn is_positive(&self, v: &[Rational]) -> bool {
        self.positives.iter().any(|r| r == v)
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc += x * &self.gram[i][j] * y;
            }
        }
        acc
    }

    /// `s_α(v) = v - 2(v,α)/(α,α) α`.
    pub fn reflect(&self, alpha: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let k = int(2) * self.inner(v, alpha) / self.inner(alpha, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - &k * a).collect()
    }

    /// Matrix of `s_α` acting on column vectors.
    pub fn reflection_matrix(&self, alpha: &[Rational]) -> SquareMatrix {
        let n = self.rank();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.reflect(alpha, &unit(n, j))).collect();
        SquareMatrix::from_rational_rows(
            (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect(),
        )
        .expect("square")
    }

    pub fn simple_reflections(&self) -> Vec<SquareMatrix> {
        self.simples.iter().map(|a| self.reflection_matrix(a)).collect()
    }

    /// Coordinates of `v` with respect to the simple roots.
    pub fn simple_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.rank();
        let a: Vec<Vec<CycloScalar>> = (0..n)
            .map(|i| (0..n).map(|j| CycloScalar::from_rational(self.simples[j][i].clone())).collect())
            .collect();
        let b: Vec<CycloScalar> = v.iter().map(|x| CycloScalar::from_rational(x.clone())).collect();
        matrix::solve(&a, &b)
            .expect("simple roots form a basis")
            .into_iter()
            .map(|c| c.as_rational().cloned().expect("rational coordinates"))
            .collect()
    }

    /// Image of a root vector under a matrix acting on column vectors.
    pub fn apply(g: &SquareMatrix, v: &[Rational]) -> Vec<Rational> {
        let w: Vec<CycloScalar> = v.iter().map(|x| CycloScalar::from_rational(x.clone())).collect();
        g.apply(&w)
            .into_iter()
            .map(|c| c.as_rational().cloned().expect("rational matrix"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (name, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B2", 4),
            ("C2", 4),
            ("C3", 9),
            ("B4", 16),
            ("D4", 12),
            ("G2", 6),
        ] {
            let rs = RootSystem::new(name.parse().unwrap());
            assert_eq!(rs.num_positive(), n, "{name}");
            assert_eq!(rs.roots().len(), 2 * n);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!("C:3".parse::<CartanType>().unwrap(), "C3".parse().unwrap());
        assert!("G3".parse::<CartanType>().is_err());
        assert!("D1".parse::<CartanType>().is_err());
        assert!("E6".parse::<CartanType>().is_err());
    }

    #[test]
    fn reflections_permute_roots() {
        let rs = RootSystem::new("G2".parse().unwrap());
        let roots = rs.roots();
        for s in rs.simple_reflections() {
            for r in &roots {
                assert!(rs.is_root(&RootSystem::apply(&s, r)));
            }
        }
    }
}
